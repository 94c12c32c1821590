#include "quadrank/field.hpp"

#include <ostream>
#include <sstream>

namespace quadrank {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 finalizer over (master, stream)
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  unsigned __int128 acc = 1 % mod;
  unsigned __int128 b = base % mod;
  while (exp) {
    if (exp & 1U) acc = acc * b % mod;
    b = b * b % mod;
    exp >>= 1U;
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint32_t smallest_nonresidue(std::uint32_t p) {
  for (std::uint32_t g = 2; g < p; ++g) {
    if (pow_mod(g, (p - 1) / 2, p) == p - 1) return g;
  }
  throw UnsupportedField("no quadratic non-residue mod " + std::to_string(p));
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p == 2) throw UnsupportedField("characteristic 2 is not supported");
  if (p >= (1U << 31) || !is_prime(p)) throw UnsupportedField(std::to_string(p) + " is not an odd prime below 2^31");
}

PrimeField field_traits<Fp>::field_of(const Fp& x) {
  if (!x.bound()) throw FieldMismatch("unbound literal has no field");
  return PrimeField(x.modulus());
}

QuadraticExtension field_traits<Fp2>::field_of(const Fp2& x) {
  if (!x.bound()) throw FieldMismatch("unbound literal has no field");
  return QuadraticExtension(PrimeField(x.modulus()));
}

Fp Fp::inv() const {
  if (is_zero()) throw std::domain_error("division by zero in F_p");
  if (p_ == 0) {
    if (v_ == 1 || v_ == -1) return *this;
    throw std::domain_error("inverse of an unbound literal");
  }
  return Fp(static_cast<std::int64_t>(pow_mod(v_, p_ - 2, p_)), p_);
}

Fp2 Fp2::inv() const {
  if (is_zero()) throw std::domain_error("division by zero in F_p^2");
  if (p_ == 0) {
    if (a_ == 1 || a_ == -1) return *this;
    throw std::domain_error("inverse of an unbound literal");
  }
  // (a + bu)^{-1} = (a - bu) / (a^2 - g b^2)
  const Fp a = Fp::make(p_, a_), b = Fp::make(p_, b_), g = Fp::make(p_, g_);
  const Fp n = (a * a - g * b * b).inv();
  return make(p_, g_, (a * n).value(), (-(b * n)).value());
}

Rational Rational::inv() const {
  if (is_zero()) throw std::domain_error("division by zero in Q");
  return Rational(mpq_class(1 / q_));
}

namespace {

// Tonelli-Shanks; returns any root (caller canonicalizes).
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (pow_mod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  std::uint64_t q = p - 1, s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s, c = pow_mod(z, q, p), t = pow_mod(a, q, p), r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

}  // namespace

std::optional<Fp> sqrt(const Fp& x) {
  if (!x.bound()) {
    if (x.value() == 0 || x.value() == 1) return x;
    throw std::domain_error("square root of an unbound literal");
  }
  const auto r = sqrt_mod(static_cast<std::uint64_t>(x.value()), x.modulus());
  if (!r) return std::nullopt;
  const std::uint64_t other = (x.modulus() - *r) % x.modulus();
  return Fp::make(x.modulus(), static_cast<std::int64_t>(std::min(*r, other)));
}

std::optional<Fp2> sqrt(const Fp2& x) {
  if (!x.bound()) {
    if (x.real().value() == 0 || x.real().value() == 1) return x;
    throw std::domain_error("square root of an unbound literal");
  }
  const std::uint32_t p = x.modulus(), g = x.generator_square();
  const Fp a = x.real(), b = x.imag(), gg = Fp::make(p, g);
  std::optional<Fp2> root;
  if (b.is_zero()) {
    if (auto r = sqrt(a)) {
      root = Fp2::make(p, g, r->value(), 0);
    } else {
      // a = g * c^2  ->  root = c u
      auto c = sqrt(a / gg);
      root = Fp2::make(p, g, 0, c->value());
    }
  } else {
    // norm n = a^2 - g b^2 must be a square in F_p; then one of (a +- sqrt n)/2 is.
    const auto n = sqrt(a * a - gg * b * b);
    if (!n) return std::nullopt;
    const Fp half = Fp::make(p, 2).inv();
    for (const Fp& cand : {(a + *n) * half, (a - *n) * half}) {
      if (auto c = sqrt(cand); c && !c->is_zero()) {
        const Fp d = b / (Fp::make(p, 2) * *c);
        root = Fp2::make(p, g, c->value(), d.value());
        break;
      }
    }
    if (!root) return std::nullopt;
  }
  const Fp2 other = -*root;
  auto key = [](const Fp2& v) { return std::make_pair(v.real().value(), v.imag().value()); };
  return key(other) < key(*root) ? other : *root;
}

std::optional<Rational> sqrt(const Rational& x) {
  const mpq_class& q = x.value();
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(mpq_class(rn, rd));
}

std::string to_string(const Fp& x) { return std::to_string(x.symmetric()); }

std::string to_string(const Fp2& x) {
  if (x.in_base_field()) return to_string(x.real());
  std::ostringstream os;
  const std::int64_t a = x.real().symmetric(), b = x.imag().symmetric();
  if (a != 0) os << a << (b < 0 ? "-" : "+");
  else if (b < 0) os << "-";
  const std::int64_t mag = b < 0 ? -b : b;
  if (mag != 1) os << mag << "*";
  os << "u";
  return os.str();
}

std::string to_string(const Rational& x) { return x.value().get_str(); }

std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << to_string(x); }
std::ostream& operator<<(std::ostream& os, const Fp2& x) { return os << to_string(x); }
std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << to_string(x); }

}  // namespace quadrank
