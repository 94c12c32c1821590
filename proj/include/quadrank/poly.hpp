#pragma once

// Sparse multivariate polynomials keyed by exponent vectors, stored in
// descending graded-lex order.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadrank/dense.hpp"

namespace quadrank {

using Exponents = std::vector<std::uint16_t>;

inline unsigned total_degree(const Exponents& e) {
  unsigned d = 0;
  for (auto x : e) d += x;
  return d;
}

/// Graded lex: higher total degree first, then lexicographically larger exponent vector.
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

/// Exponent vectors of degree e in n variables, descending graded-lex order.
std::vector<Exponents> monomials_of_degree(std::size_t n, unsigned e);

std::vector<std::string> default_variable_names(std::size_t arity, std::string_view prefix = "x");

template <ExactField F>
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, F, GradedLexGreater>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t arity) : arity_(arity) {}

  static MultiPoly constant(std::size_t arity, const F& c) {
    MultiPoly p(arity);
    p.add_term(Exponents(arity, 0), c);
    return p;
  }
  static MultiPoly variable(std::size_t arity, std::size_t i, const F& one = F(1)) {
    Exponents e(arity, 0);
    e.at(i) = 1;
    return monomial(std::move(e), one);
  }
  static MultiPoly monomial(Exponents e, const F& c) {
    MultiPoly p(e.size());
    p.add_term(std::move(e), c);
    return p;
  }

  std::size_t arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(total_degree(terms_.begin()->first)); }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const unsigned d = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) != d) return false;
    return true;
  }

  /// Largest monomial in graded-lex order. Precondition: nonzero.
  const std::pair<const Exponents, F>& leading_term() const { return *terms_.begin(); }

  F coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? F(0) : it->second;
  }

  void add_term(Exponents e, const F& c) {
    if (e.size() != arity_) throw ArityMismatch("exponent vector of wrong arity");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  MultiPoly operator-() const {
    MultiPoly r(arity_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check(b);
    MultiPoly r(a.arity_);
    Exponents e(a.arity_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
        r.add_term(e, ca * cb);
      }
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend MultiPoly operator*(const F& s, const MultiPoly& a) {
    MultiPoly r(a.arity_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : a.terms_) r.add_term(e, s * c);
    return r;
  }
  friend MultiPoly operator*(const MultiPoly& a, const F& s) { return s * a; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.arity_ != b.arity_ || a.terms_.size() != b.terms_.size()) return false;
    auto ib = b.terms_.begin();
    for (auto ia = a.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
      if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    return true;
  }

  F eval(std::span<const F> point) const {
    if (point.size() != arity_) throw ArityMismatch("evaluation point of wrong arity");
    F acc = F(0);
    for (const auto& [e, c] : terms_) {
      F t = c;
      for (std::size_t i = 0; i < arity_; ++i)
        if (e[i]) t = t * power(point[i], e[i]);
      acc += t;
    }
    return acc;
  }

  /// Substitutes x_i -> sum_j a(i, j) x_j.
  MultiPoly linear_substitute(const Matrix<F>& a) const {
    if (static_cast<std::size_t>(a.rows()) != arity_ || static_cast<std::size_t>(a.cols()) != arity_)
      throw ArityMismatch("substitution matrix must be arity x arity");
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < arity_; ++i) {
      MultiPoly li(arity_);
      for (std::size_t j = 0; j < arity_; ++j) {
        Exponents e(arity_, 0);
        e[j] = 1;
        li.add_term(std::move(e), a(static_cast<Index>(i), static_cast<Index>(j)));
      }
      images.push_back(std::move(li));
    }
    return compose(images);
  }

  /// Substitutes x_i -> images[i] (all of one common arity).
  MultiPoly compose(std::span<const MultiPoly> images) const {
    if (images.size() != arity_) throw ArityMismatch("compose needs one image per variable");
    const std::size_t out_arity = images.empty() ? 0 : images.front().arity();
    MultiPoly r(out_arity);
    for (const auto& [e, c] : terms_) {
      MultiPoly t = constant(out_arity, c);
      for (std::size_t i = 0; i < arity_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) t = t * images[i];
      r += t;
    }
    return r;
  }

  MultiPoly derivative(std::size_t var) const {
    MultiPoly r(arity_);
    for (const auto& [e, c] : terms_) {
      if (e.at(var) == 0) continue;
      Exponents d = e;
      --d[var];
      F mult = F(0);
      for (unsigned k = 0; k < e[var]; ++k) mult += c;
      r.add_term(std::move(d), mult);
    }
    return r;
  }

  /// Degree of each monomial restricted to the variable block [begin, end).
  unsigned block_degree(const Exponents& e, std::size_t begin, std::size_t end) const {
    unsigned d = 0;
    for (std::size_t i = begin; i < end; ++i) d += e[i];
    return d;
  }

  template <class G, class Fn>
  MultiPoly<G> map_coefficients(Fn&& fn) const {
    MultiPoly<G> r(arity_);
    for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
    return r;
  }

 private:
  void check(const MultiPoly& o) const {
    if (o.arity_ != arity_) throw ArityMismatch("polynomial arity mismatch");
  }

  std::size_t arity_ = 0;
  TermMap terms_;
};

/// Text form `c*x0^a*x1^b + ...` in descending graded-lex order.
template <ExactField F>
std::string to_string(const MultiPoly<F>& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool negative = prints_negative(c);
    const F mag = negative ? -c : c;
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    const bool unit = mag == F(1) || (mag - F(1)).is_zero();
    std::string coeff = to_string(mag);
    if (needs_parentheses(mag)) coeff = "(" + coeff + ")";
    if (mono.empty()) out += coeff;
    else if (unit) out += mono;
    else out += coeff + "*" + mono;
  }
  return out;
}

template <ExactField F>
std::string to_string(const MultiPoly<F>& p) {
  return to_string(p, default_variable_names(p.arity()));
}

namespace detail {

struct ParsedTerm {
  bool negative = false;
  long num = 1;
  long den = 1;
  Exponents exps;
};

/// Tokenizes `c*x0^a*x1^b +- ...` (integer or n/d coefficients) against the given names.
std::vector<ParsedTerm> parse_terms(std::string_view text, const std::vector<std::string>& names);

}  // namespace detail

/// Parses the text form back. Variable names must come from `names`; coefficients
/// are integers or fractions n/d, mapped into the field `k`.
template <class Field>
auto parse_poly(std::string_view text, const std::vector<std::string>& names, const Field& k) {
  using F = typename Field::element_type;
  MultiPoly<F> p(names.size());
  for (auto& t : detail::parse_terms(text, names)) {
    F c = k(t.num) / k(t.den);
    if (t.negative) c = -c;
    p.add_term(std::move(t.exps), c);
  }
  return p;
}

}  // namespace quadrank
