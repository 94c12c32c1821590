#pragma once

// Exact coefficient fields: prime fields F_p (p odd), their quadratic extensions
// F_{p^2} = F_p[u]/(u^2 - g), and the rationals. All three are usable as Eigen
// scalars.
//
// Prime-field elements carry their modulus. An element built from a bare integer
// (including the zeros Eigen writes when it allocates) is an "unbound literal";
// it adopts the modulus of whatever bound element it is combined with. Combining
// two bound elements of different fields throws FieldMismatch.

#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>

#include <Eigen/Core>
#include <gmpxx.h>

#include "quadrank/errors.hpp"

namespace quadrank {

using Rng = std::mt19937_64;

/// Deterministic seed derivation used for per-chunk / per-trial streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

bool is_prime(std::uint64_t n);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
/// Smallest g >= 2 that is not a square mod p.
std::uint32_t smallest_nonresidue(std::uint32_t p);

// ---------------------------------------------------------------------------
// F_p
// ---------------------------------------------------------------------------

class Fp {
 public:
  constexpr Fp() noexcept = default;
  template <std::integral I>
  constexpr Fp(I literal) noexcept : v_(static_cast<std::int64_t>(literal)) {}  // NOLINT

  static Fp make(std::uint32_t p, std::int64_t value) {
    std::int64_t r = value % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return Fp(r, p);
  }

  bool bound() const noexcept { return p_ != 0; }
  std::uint32_t modulus() const noexcept { return p_; }
  std::uint64_t tag() const noexcept { return p_; }
  /// Canonical residue in [0, p) (or the literal value when unbound).
  std::int64_t value() const noexcept { return v_; }
  /// Representative in (-p/2, p/2], used for printing.
  std::int64_t symmetric() const noexcept {
    return (p_ != 0 && v_ > static_cast<std::int64_t>(p_) / 2) ? v_ - p_ : v_;
  }
  bool is_zero() const noexcept { return p_ == 0 ? v_ == 0 : v_ == 0; }
  bool is_one() const noexcept { return v_ == 1; }

  Fp inv() const;

  friend Fp operator+(const Fp& a, const Fp& b) {
    const std::uint32_t p = join(a.p_, b.p_);
    if (p == 0) return Fp(a.v_ + b.v_);
    std::int64_t s = a.reduced(p) + b.reduced(p);
    if (s >= static_cast<std::int64_t>(p)) s -= p;
    return Fp(s, p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    const std::uint32_t p = join(a.p_, b.p_);
    if (p == 0) return Fp(a.v_ - b.v_);
    std::int64_t s = a.reduced(p) - b.reduced(p);
    if (s < 0) s += p;
    return Fp(s, p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    const std::uint32_t p = join(a.p_, b.p_);
    if (p == 0) return Fp(a.v_ * b.v_);
    return Fp((a.reduced(p) * b.reduced(p)) % p, p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) {
    if (a.p_ == 0 && b.p_ != 0) return Fp::make(b.p_, a.v_) * b.inv();
    return a * b.inv();
  }
  Fp operator-() const { return p_ == 0 ? Fp(-v_) : Fp(v_ == 0 ? 0 : p_ - v_, p_); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend bool operator==(const Fp& a, const Fp& b) {
    const std::uint32_t p = join(a.p_, b.p_);
    if (p == 0) return a.v_ == b.v_;
    return a.reduced(p) == b.reduced(p);
  }

 private:
  constexpr Fp(std::int64_t v, std::uint32_t p) noexcept : v_(v), p_(p) {}

  static std::uint32_t join(std::uint32_t a, std::uint32_t b) {
    if (a == 0) return b;
    if (b == 0 || a == b) return a;
    throw FieldMismatch("F_" + std::to_string(a) + " vs F_" + std::to_string(b));
  }
  std::int64_t reduced(std::uint32_t p) const noexcept {
    if (p_ == p) return v_;
    std::int64_t r = v_ % static_cast<std::int64_t>(p);
    return r < 0 ? r + p : r;
  }

  std::int64_t v_ = 0;
  std::uint32_t p_ = 0;
};

// ---------------------------------------------------------------------------
// F_{p^2} = F_p[u]/(u^2 - g), g the smallest non-residue >= 2
// ---------------------------------------------------------------------------

class Fp2 {
 public:
  constexpr Fp2() noexcept = default;
  template <std::integral I>
  constexpr Fp2(I literal) noexcept : a_(static_cast<std::int64_t>(literal)) {}  // NOLINT

  static Fp2 make(std::uint32_t p, std::uint32_t g, std::int64_t a, std::int64_t b) {
    return Fp2(Fp::make(p, a).value(), Fp::make(p, b).value(), p, g);
  }

  bool bound() const noexcept { return p_ != 0; }
  std::uint32_t modulus() const noexcept { return p_; }
  std::uint32_t generator_square() const noexcept { return g_; }
  std::uint64_t tag() const noexcept { return p_ | (static_cast<std::uint64_t>(g_) << 32); }
  /// Coordinates in the basis {1, u}.
  Fp real() const { return p_ == 0 ? Fp(a_) : Fp::make(p_, a_); }
  Fp imag() const { return p_ == 0 ? Fp(0) : Fp::make(p_, b_); }
  bool in_base_field() const noexcept { return b_ == 0; }
  bool is_zero() const noexcept { return a_ == 0 && b_ == 0; }

  Fp2 inv() const;

  friend Fp2 operator+(const Fp2& x, const Fp2& y) {
    const auto [p, g] = join(x, y);
    if (p == 0) return Fp2(x.a_ + y.a_);
    return Fp2(mod(x.ra(p) + y.ra(p), p), mod(x.b_ + y.b_, p), p, g);
  }
  friend Fp2 operator-(const Fp2& x, const Fp2& y) {
    const auto [p, g] = join(x, y);
    if (p == 0) return Fp2(x.a_ - y.a_);
    return Fp2(mod(x.ra(p) - y.ra(p), p), mod(x.b_ - y.b_, p), p, g);
  }
  friend Fp2 operator*(const Fp2& x, const Fp2& y) {
    const auto [p, g] = join(x, y);
    if (p == 0) return Fp2(x.a_ * y.a_);
    const std::int64_t xa = x.ra(p), ya = y.ra(p);
    const std::int64_t re = (xa * ya + (x.b_ * y.b_ % p) * g) % p;
    const std::int64_t im = (xa * y.b_ + x.b_ * ya) % p;
    return Fp2(re, im, p, g);
  }
  friend Fp2 operator/(const Fp2& x, const Fp2& y) {
    if (x.p_ == 0 && y.p_ != 0) return make(y.p_, y.g_, x.a_, 0) * y.inv();
    return x * y.inv();
  }
  Fp2 operator-() const { return p_ == 0 ? Fp2(-a_) : Fp2(mod(-a_, p_), mod(-b_, p_), p_, g_); }
  Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
  Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
  Fp2& operator*=(const Fp2& o) { return *this = *this * o; }
  Fp2& operator/=(const Fp2& o) { return *this = *this / o; }

  friend bool operator==(const Fp2& x, const Fp2& y) {
    const auto [p, g] = join(x, y);
    if (p == 0) return x.a_ == y.a_;
    return x.ra(p) == y.ra(p) && x.b_ == y.b_;
  }

 private:
  constexpr Fp2(std::int64_t a, std::int64_t b, std::uint32_t p, std::uint32_t g) noexcept
      : a_(a), b_(b), p_(p), g_(g) {}

  struct Tag {
    std::uint32_t p, g;
  };
  static Tag join(const Fp2& x, const Fp2& y) {
    if (x.p_ == 0) return {y.p_, y.g_};
    if (y.p_ == 0 || (x.p_ == y.p_ && x.g_ == y.g_)) return {x.p_, x.g_};
    throw FieldMismatch("F_" + std::to_string(x.p_) + "^2 vs F_" + std::to_string(y.p_) + "^2");
  }
  static std::int64_t mod(std::int64_t v, std::uint32_t p) {
    v %= static_cast<std::int64_t>(p);
    return v < 0 ? v + p : v;
  }
  std::int64_t ra(std::uint32_t p) const { return p_ == p ? a_ : mod(a_, p); }

  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  std::uint32_t p_ = 0;
  std::uint32_t g_ = 0;
};

// ---------------------------------------------------------------------------
// Q: reduced fractions over GMP integers
// ---------------------------------------------------------------------------

class Rational {
 public:
  Rational() = default;
  template <std::integral I>
  Rational(I v) : q_(static_cast<long>(v)) {}  // NOLINT
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rational(long num, long den) : q_(num, den) { q_.canonicalize(); }

  const mpq_class& value() const noexcept { return q_; }
  std::uint64_t tag() const noexcept { return 1; }
  bool is_zero() const { return sgn(q_) == 0; }
  Rational inv() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inv(); }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

 private:
  mpq_class q_;
};

// ---------------------------------------------------------------------------
// Field descriptors. Every element that enters a computation is created
// through one of these, so constants always carry the right field tag.
// ---------------------------------------------------------------------------

class PrimeField {
 public:
  using element_type = Fp;
  /// Throws UnsupportedField unless p is an odd prime below 2^31.
  explicit PrimeField(std::uint32_t p);

  Fp operator()(std::int64_t v) const { return Fp::make(p_, v); }
  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint64_t size() const noexcept { return p_; }
  /// Elements enumerated as 0, 1, ..., p-1.
  Fp element(std::uint64_t index) const { return Fp::make(p_, static_cast<std::int64_t>(index)); }
  Fp random(Rng& rng) const {
    return element(std::uniform_int_distribution<std::uint64_t>(0, p_ - 1)(rng));
  }
  Fp random_nonzero(Rng& rng) const {
    return element(std::uniform_int_distribution<std::uint64_t>(1, p_ - 1)(rng));
  }
  std::string name() const { return "F_" + std::to_string(p_); }
  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

class QuadraticExtension {
 public:
  using element_type = Fp2;
  explicit QuadraticExtension(const PrimeField& base)
      : base_(base), g_(smallest_nonresidue(base.characteristic())) {}

  Fp2 operator()(std::int64_t v) const { return Fp2::make(p(), g_, v, 0); }
  Fp2 make(std::int64_t a, std::int64_t b) const { return Fp2::make(p(), g_, a, b); }
  Fp2 lift(const Fp& x) const { return Fp2::make(p(), g_, x.value(), 0); }
  /// The adjoined square root of g.
  Fp2 generator() const { return make(0, 1); }
  std::uint32_t characteristic() const noexcept { return p(); }
  std::uint64_t size() const noexcept { return std::uint64_t{p()} * p(); }
  std::uint32_t nonresidue() const noexcept { return g_; }
  const PrimeField& base() const noexcept { return base_; }
  Fp2 element(std::uint64_t index) const {
    return make(static_cast<std::int64_t>(index % p()), static_cast<std::int64_t>(index / p()));
  }
  Fp2 random(Rng& rng) const { return element(std::uniform_int_distribution<std::uint64_t>(0, size() - 1)(rng)); }
  Fp2 random_nonzero(Rng& rng) const {
    return element(std::uniform_int_distribution<std::uint64_t>(1, size() - 1)(rng));
  }
  std::string name() const { return "F_" + std::to_string(p()) + "^2"; }
  friend bool operator==(const QuadraticExtension&, const QuadraticExtension&) = default;

 private:
  std::uint32_t p() const noexcept { return base_.characteristic(); }
  PrimeField base_;
  std::uint32_t g_;
};

class RationalField {
 public:
  using element_type = Rational;
  Rational operator()(std::int64_t v) const { return Rational(v); }
  Rational operator()(long num, long den) const { return Rational(num, den); }
  std::uint32_t characteristic() const noexcept { return 0; }
  /// Small random rationals: numerator in [-9, 9], denominator in [1, 4].
  Rational random(Rng& rng) const {
    const long num = std::uniform_int_distribution<long>(-9, 9)(rng);
    const long den = std::uniform_int_distribution<long>(1, 4)(rng);
    return Rational(num, den);
  }
  Rational random_nonzero(Rng& rng) const {
    for (;;) {
      Rational r = random(rng);
      if (!r.is_zero()) return r;
    }
  }
  std::string name() const { return "Q"; }
  friend bool operator==(const RationalField&, const RationalField&) = default;
};

// ---------------------------------------------------------------------------
// Traits tying element types to their descriptors.
// ---------------------------------------------------------------------------

template <class F>
struct field_traits;

template <>
struct field_traits<Fp> {
  using field_type = PrimeField;
  using extension_type = Fp2;
  using extension_field = QuadraticExtension;
  static constexpr bool finite = true;
  static constexpr bool has_extension = true;
  static PrimeField field_of(const Fp& x);
  static QuadraticExtension extend(const PrimeField& k) { return QuadraticExtension(k); }
  static Fp2 lift(const QuadraticExtension& e, const Fp& x) { return e.lift(x); }
};

template <>
struct field_traits<Fp2> {
  using field_type = QuadraticExtension;
  using extension_type = Fp2;
  using extension_field = QuadraticExtension;
  static constexpr bool finite = true;
  static constexpr bool has_extension = false;
  static QuadraticExtension field_of(const Fp2& x);
  static QuadraticExtension extend(const QuadraticExtension& k) { return k; }
  static Fp2 lift(const QuadraticExtension&, const Fp2& x) { return x; }
};

template <>
struct field_traits<Rational> {
  using field_type = RationalField;
  using extension_type = Rational;
  using extension_field = RationalField;
  static constexpr bool finite = false;
  static constexpr bool has_extension = false;
  static RationalField field_of(const Rational&) { return {}; }
  static RationalField extend(const RationalField& k) { return k; }
  static Rational lift(const RationalField&, const Rational& x) { return x; }
};

template <class F>
using field_t = typename field_traits<F>::field_type;
template <class F>
using extension_t = typename field_traits<F>::extension_type;
template <class F>
using extension_field_t = typename field_traits<F>::extension_field;

template <class F>
concept ExactField = requires(const F a, const F b) {
  { a + b } -> std::convertible_to<F>;
  { a - b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { a / b } -> std::convertible_to<F>;
  { -a } -> std::convertible_to<F>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.inv() } -> std::convertible_to<F>;
  { a.tag() } -> std::convertible_to<std::uint64_t>;
  typename field_traits<F>::field_type;
};

template <class F>
concept FiniteField = ExactField<F> && field_traits<F>::finite;

// Square roots. The returned root is canonical: smallest residue for F_p,
// lexicographically smallest (real, imag) pair for F_{p^2}, non-negative for Q.
std::optional<Fp> sqrt(const Fp& x);
std::optional<Fp2> sqrt(const Fp2& x);
std::optional<Rational> sqrt(const Rational& x);

template <ExactField F>
bool is_square(const F& x) {
  return sqrt(x).has_value();
}

template <ExactField F>
F power(F base, std::uint64_t exp) {
  F acc = F(1);
  while (exp) {
    if (exp & 1U) acc = acc * base;
    base = base * base;
    exp >>= 1U;
  }
  return acc;
}

std::string to_string(const Fp& x);
std::string to_string(const Fp2& x);
std::string to_string(const Rational& x);
std::ostream& operator<<(std::ostream& os, const Fp& x);
std::ostream& operator<<(std::ostream& os, const Fp2& x);
std::ostream& operator<<(std::ostream& os, const Rational& x);

/// True when every coefficient of a printed term needs parentheses (F_{p^2} with both parts).
inline bool needs_parentheses(const Fp2& x) { return !x.in_base_field(); }
inline bool needs_parentheses(const Fp&) { return false; }
inline bool needs_parentheses(const Rational&) { return false; }

/// Whether a printed coefficient should be rendered with a leading minus.
inline bool prints_negative(const Fp& x) { return x.symmetric() < 0; }
inline bool prints_negative(const Fp2& x) { return x.in_base_field() && x.real().symmetric() < 0; }
inline bool prints_negative(const Rational& x) { return sgn(x.value()) < 0; }

}  // namespace quadrank

namespace Eigen {

template <>
struct NumTraits<quadrank::Fp> : GenericNumTraits<quadrank::Fp> {
  using Real = quadrank::Fp;
  using NonInteger = quadrank::Fp;
  using Literal = quadrank::Fp;
  using Nested = quadrank::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<quadrank::Fp2> : GenericNumTraits<quadrank::Fp2> {
  using Real = quadrank::Fp2;
  using NonInteger = quadrank::Fp2;
  using Literal = quadrank::Fp2;
  using Nested = quadrank::Fp2;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<quadrank::Rational> : GenericNumTraits<quadrank::Rational> {
  using Real = quadrank::Rational;
  using NonInteger = quadrank::Rational;
  using Literal = quadrank::Rational;
  using Nested = quadrank::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 50
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
