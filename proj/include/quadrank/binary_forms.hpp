#pragma once

// Binary forms f(u, v): gcd, Yun squarefree decomposition, the odd/even
// multiplicity split f = unit * s^2 * h, and exact square roots.
//
// Everything works on the dehomogenization f(u, 1) as a dense univariate
// polynomial, with the power of v dividing f carried alongside. Factors are
// returned monic in their lexicographically largest monomial (the highest
// power of u, or v itself).

#include <optional>
#include <utility>
#include <vector>

#include "quadrank/poly.hpp"

namespace quadrank {

/// Dense univariate polynomial, coefficients from degree 0 upward, no trailing zeros.
template <ExactField F>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<F> c) : c_(std::move(c)) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<F>& coefficients() const { return c_; }
  const F& lead() const { return c_.back(); }
  F operator[](std::size_t i) const { return i < c_.size() ? c_[i] : F(0); }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()), F(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()), F(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const F& s, const UPoly& a) {
    std::vector<F> r = a.c_;
    for (auto& x : r) x = s * x;
    return UPoly(std::move(r));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<F> r(c_.size() - 1, F(0));
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = F(static_cast<std::int64_t>(i)) * c_[i];
    return UPoly(std::move(r));
  }

  UPoly monic() const { return is_zero() ? *this : lead().inv() * *this; }

  /// Euclidean division; returns (quotient, remainder).
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<F> rem = c_;
    if (rem.size() < d.c_.size()) return {UPoly{}, *this};
    std::vector<F> quo(rem.size() - d.c_.size() + 1, F(0));
    const F inv = d.lead().inv();
    for (std::size_t k = quo.size(); k-- > 0;) {
      const F q = rem[k + d.c_.size() - 1] * inv;
      quo[k] = q;
      if (q.is_zero()) continue;
      for (std::size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= q * d.c_[j];
    }
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<F> c_;
};

/// Monic gcd by the Euclidean algorithm (zero only if both inputs are zero).
template <ExactField F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// A binary form split as v^v_power * f(u, 1) (rehomogenized).
template <ExactField F>
struct Dehomogenized {
  UPoly<F> affine;
  unsigned v_power = 0;
  unsigned degree = 0;
};

template <ExactField F>
void require_binary_form(const MultiPoly<F>& f) {
  if (f.arity() != 2) throw ArityMismatch("binary form expected (2 variables)");
  if (!f.is_homogeneous()) throw std::invalid_argument("binary form must be homogeneous");
}

template <ExactField F>
Dehomogenized<F> dehomogenize(const MultiPoly<F>& f) {
  require_binary_form(f);
  if (f.is_zero()) throw std::invalid_argument("zero binary form");
  const unsigned deg = static_cast<unsigned>(f.degree());
  std::vector<F> c(deg + 1, F(0));
  for (const auto& [e, coeff] : f.terms()) c[e[0]] = coeff;
  UPoly<F> a(std::move(c));
  return {a, deg - static_cast<unsigned>(a.degree()), deg};
}

/// v^v_power * g(u, v), where g is the homogenization of `affine` in its own degree.
template <ExactField F>
MultiPoly<F> homogenize(const UPoly<F>& affine, unsigned v_power) {
  MultiPoly<F> out(2);
  const unsigned e = static_cast<unsigned>(std::max(affine.degree(), 0));
  for (unsigned i = 0; i < affine.coefficients().size(); ++i)
    out.add_term(Exponents{static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(e - i + v_power)},
                 affine.coefficients()[i]);
  return out;
}

/// Scales a nonzero binary form so its leading (largest graded-lex) coefficient is 1.
template <ExactField F>
MultiPoly<F> normalize_form(const MultiPoly<F>& f) {
  if (f.is_zero()) return f;
  return f.leading_term().second.inv() * f;
}

template <ExactField F>
MultiPoly<F> binary_gcd(const MultiPoly<F>& f, const MultiPoly<F>& g) {
  require_binary_form(f);
  require_binary_form(g);
  if (f.is_zero()) return normalize_form(g);
  if (g.is_zero()) return normalize_form(f);
  const auto a = dehomogenize(f), b = dehomogenize(g);
  return homogenize(gcd(a.affine, b.affine), std::min(a.v_power, b.v_power));
}

/// Exact quotient f / g, or none when g does not divide f.
template <ExactField F>
std::optional<MultiPoly<F>> divide_exact(const MultiPoly<F>& f, const MultiPoly<F>& g) {
  require_binary_form(f);
  require_binary_form(g);
  if (g.is_zero()) throw std::domain_error("division by the zero form");
  if (f.is_zero()) return f;
  const auto a = dehomogenize(f), b = dehomogenize(g);
  if (b.v_power > a.v_power || b.degree > a.degree) return std::nullopt;
  auto [q, r] = a.affine.divmod(b.affine);
  if (!r.is_zero()) return std::nullopt;
  // The quotient's v-power makes up the degree difference.
  const unsigned qdeg = a.degree - b.degree;
  return homogenize(q, qdeg - static_cast<unsigned>(q.degree()));
}

template <ExactField F>
struct SquarefreeDecomposition {
  std::vector<std::pair<MultiPoly<F>, unsigned>> factors;  ///< monic, squarefree, pairwise coprime
  F unit;

  MultiPoly<F> reassemble() const {
    MultiPoly<F> out = MultiPoly<F>::constant(2, unit);
    for (const auto& [g, m] : factors)
      for (unsigned k = 0; k < m; ++k) out = out * g;
    return out;
  }
};

namespace detail {

/// Yun's algorithm on a monic univariate polynomial; entry i has multiplicity i+1.
template <ExactField F>
std::vector<UPoly<F>> yun(const UPoly<F>& f) {
  std::vector<UPoly<F>> out;
  if (f.degree() < 1) return out;
  const UPoly<F> df = f.derivative();
  const UPoly<F> a0 = gcd(f, df);
  UPoly<F> b = f.divmod(a0).first;
  UPoly<F> c = df.divmod(a0).first;
  UPoly<F> d = c - b.derivative();
  while (b.degree() > 0) {
    const UPoly<F> a = gcd(b, d);
    out.push_back(a);
    b = b.divmod(a).first;
    c = d.divmod(a).first;
    d = c - b.derivative();
  }
  return out;
}

template <ExactField F>
void require_separable(const MultiPoly<F>& f) {
  const std::uint64_t p = f.is_zero() ? 0 : [&] {
    const F& c = f.leading_term().second;
    if constexpr (field_traits<F>::finite) return std::uint64_t{field_traits<F>::field_of(c).characteristic()};
    else return std::uint64_t{0};
  }();
  if (p != 0 && p <= static_cast<std::uint64_t>(f.degree()))
    throw UnsupportedCharacteristic("squarefree decomposition needs characteristic > degree (p = " +
                                    std::to_string(p) + ", degree " + std::to_string(f.degree()) + ")");
}

}  // namespace detail

/// Squarefree decomposition, factors ordered by decreasing multiplicity (the power of v
/// after the u-part factor of equal multiplicity). Throws UnsupportedCharacteristic
/// when 0 < p <= deg f.
template <ExactField F>
SquarefreeDecomposition<F> squarefree(const MultiPoly<F>& f) {
  const auto dh = dehomogenize(f);
  detail::require_separable(f);
  SquarefreeDecomposition<F> out{{}, dh.affine.lead()};
  const auto parts = detail::yun(dh.affine.monic());
  const F one = dh.affine.lead() / dh.affine.lead();
  const MultiPoly<F> v = MultiPoly<F>::monomial(Exponents{0, 1}, one);
  const unsigned top = std::max<unsigned>(static_cast<unsigned>(parts.size()), dh.v_power);
  for (unsigned m = top; m >= 1; --m) {
    if (m <= parts.size() && parts[m - 1].degree() > 0) out.factors.emplace_back(homogenize(parts[m - 1], 0), m);
    if (m == dh.v_power) out.factors.emplace_back(v, m);
  }
  return out;
}

template <ExactField F>
struct OddEvenSplit {
  MultiPoly<F> odd;   ///< h: product of the factors of odd multiplicity (squarefree, monic)
  MultiPoly<F> half;  ///< s: product of factor^(multiplicity / 2) (monic)
  F unit;             ///< f = unit * s^2 * h
};

template <ExactField F>
OddEvenSplit<F> odd_even_split(const MultiPoly<F>& f) {
  const auto sq = squarefree(f);
  const F one = sq.unit / sq.unit;
  OddEvenSplit<F> out{MultiPoly<F>::constant(2, one), MultiPoly<F>::constant(2, one), sq.unit};
  for (const auto& [g, m] : sq.factors) {
    if (m % 2 == 1) out.odd = out.odd * g;
    for (unsigned k = 0; k < m / 2; ++k) out.half = out.half * g;
  }
  return out;
}

/// g with g^2 = f exactly (canonical choice of sign from the field's sqrt), or none.
template <ExactField F>
std::optional<MultiPoly<F>> exact_sqrt(const MultiPoly<F>& f) {
  require_binary_form(f);
  if (f.is_zero()) return f;
  const auto dh = dehomogenize(f);
  if (dh.v_power % 2 != 0 || dh.affine.degree() % 2 != 0) return std::nullopt;
  const auto lead_root = sqrt(dh.affine.lead());
  if (!lead_root) return std::nullopt;
  const std::size_t n = static_cast<std::size_t>(dh.affine.degree()), e = n / 2;
  // Coefficients of g from the top: f_{n-j} = sum_{i=0..j} g_{e-i} g_{e-j+i}.
  std::vector<F> g(e + 1, F(0));
  g[e] = *lead_root;
  const F twice_lead = *lead_root + *lead_root;
  for (std::size_t j = 1; j <= e; ++j) {
    F acc = dh.affine[n - j];
    for (std::size_t i = 1; i < j; ++i) acc -= g[e - i] * g[e - j + i];
    g[e - j] = acc / twice_lead;
  }
  const UPoly<F> root(std::move(g));
  if (!(root * root == dh.affine)) return std::nullopt;
  return homogenize(root, dh.v_power / 2);
}

}  // namespace quadrank
