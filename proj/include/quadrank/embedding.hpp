#pragma once

// Embedded varieties (X, L): the Veronese models (P^n, O(d)) with monomial section
// bases, the space of quadrics I(X, L)_2 in symmetric-square coordinates, and the
// elliptic normal quintic fixture on the scroll S(1, 2).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadrank/dense.hpp"
#include "quadrank/poly.hpp"

namespace quadrank {

std::uint64_t binomial(unsigned n, unsigned k);

// ---------------------------------------------------------------------------
// Symmetric-square coordinates: the quadric sum_{a<=b} c_ab z_a z_b is stored as
// the vector (c_ab) with pairs in lexicographic order.
// ---------------------------------------------------------------------------

inline std::size_t sym2_size(std::size_t vars) { return vars * (vars + 1) / 2; }

inline std::size_t sym2_index(std::size_t a, std::size_t b, std::size_t vars) {
  if (a > b) std::swap(a, b);
  return a * (2 * vars - a + 1) / 2 + (b - a);
}

std::vector<std::pair<std::size_t, std::size_t>> sym2_pairs(std::size_t vars);

/// Symmetric-square vector of the product of two linear forms.
template <class R>
std::vector<R> product_sym2(const std::vector<R>& x, const std::vector<R>& y, const R& zero) {
  const std::size_t n = x.size();
  std::vector<R> out(sym2_size(n), zero);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      R c = x[a] * y[b];
      if (a != b) c = c + x[b] * y[a];
      out[sym2_index(a, b, n)] = std::move(c);
    }
  return out;
}

template <ExactField F>
Matrix<F> hessian_of_sym2(const Vector<F>& v, std::size_t vars) {
  Matrix<F> h(static_cast<Index>(vars), static_cast<Index>(vars));
  for (std::size_t a = 0; a < vars; ++a)
    for (std::size_t b = a; b < vars; ++b) {
      const F c = v(static_cast<Index>(sym2_index(a, b, vars)));
      if (a == b) h(Index(a), Index(a)) = c + c;
      else h(Index(a), Index(b)) = h(Index(b), Index(a)) = c;
    }
  return h;
}

template <ExactField F>
Vector<F> sym2_of_hessian(const Matrix<F>& h, const F& half) {
  const std::size_t vars = static_cast<std::size_t>(h.rows());
  Vector<F> v(static_cast<Index>(sym2_size(vars)));
  for (std::size_t a = 0; a < vars; ++a)
    for (std::size_t b = a; b < vars; ++b)
      v(Index(sym2_index(a, b, vars))) = a == b ? half * h(Index(a), Index(a)) : h(Index(a), Index(b));
  return v;
}

/// The quadric as a polynomial in z_0 .. z_{vars-1}.
template <ExactField F>
MultiPoly<F> quadric_poly(const Vector<F>& v, std::size_t vars) {
  MultiPoly<F> q(vars);
  for (std::size_t a = 0; a < vars; ++a)
    for (std::size_t b = a; b < vars; ++b) {
      Exponents e(vars, 0);
      ++e[a];
      ++e[b];
      q.add_term(std::move(e), v(Index(sym2_index(a, b, vars))));
    }
  return q;
}

// ---------------------------------------------------------------------------
// Veronese models
// ---------------------------------------------------------------------------

/// One decomposition L = A^ell (x) A^(d - 2 ell) of the polarization.
struct SigmaEntry {
  unsigned ell = 0;       ///< power of the generator in the first factor
  unsigned b_power = 0;   ///< d - 2 ell
  unsigned p = 0;         ///< h^0(A^ell) - 1
  unsigned q = 0;         ///< h^0(A^(d - 2 ell)) - 1
  friend bool operator==(const SigmaEntry&, const SigmaEntry&) = default;
};

/// (P^n, O(d)) with graded-lex monomial bases of H^0(O(e)) for every e <= 2d.
class VeroneseModel {
 public:
  static constexpr std::size_t kMaxSections = 36;

  /// Throws UnsupportedModel outside n, d >= 1 and h^0(O(d)) <= 36.
  VeroneseModel(unsigned n, unsigned d);

  unsigned n() const { return n_; }
  unsigned d() const { return d_; }
  std::size_t variables() const { return n_ + 1; }
  std::size_t h0(unsigned e) const { return bases_.at(e).size(); }
  /// Number of homogeneous coordinates of the ambient space, r + 1.
  std::size_t sections() const { return h0(d_); }
  std::size_t r() const { return sections() - 1; }
  const std::vector<Exponents>& basis(unsigned e) const { return bases_.at(e); }
  std::size_t index_of(const Exponents& m) const;
  std::string name() const;

  std::vector<SigmaEntry> sigma_list() const;

  /// Index in basis(ea + eb) of basis(ea)[i] * basis(eb)[j].
  std::size_t product_index(unsigned ea, std::size_t i, unsigned eb, std::size_t j) const {
    return products_.at(key(ea, eb))[i * h0(eb) + j];
  }

  /// Product of two sections given by coefficient vectors, over any ring R.
  template <class R>
  std::vector<R> multiply_sections(const std::vector<R>& a, unsigned ea, const std::vector<R>& b, unsigned eb,
                                   const R& zero) const {
    if (a.size() != h0(ea) || b.size() != h0(eb)) throw ArityMismatch("section vector of wrong length");
    std::vector<R> out(h0(ea + eb), zero);
    const auto& table = products_.at(key(ea, eb));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) out[table[i * b.size() + j]] += a[i] * b[j];
    return out;
  }

  /// The section as a polynomial in the n + 1 homogeneous variables.
  template <ExactField F>
  MultiPoly<F> section_poly(const std::vector<F>& c, unsigned e) const {
    MultiPoly<F> f(variables());
    for (std::size_t i = 0; i < c.size(); ++i) f.add_term(basis(e)[i], c[i]);
    return f;
  }

  /// Sym^2 H^0(L) -> H^0(L^2), a 0/1 matrix with rows indexed by basis(2d).
  template <ExactField F>
  Matrix<F> multiplication_matrix(const F& one) const {
    const std::size_t rs = sections();
    Matrix<F> m = Matrix<F>::Zero(Index(h0(2 * d_)), Index(sym2_size(rs)));
    for (std::size_t a = 0; a < rs; ++a)
      for (std::size_t b = a; b < rs; ++b) m(Index(product_index(d_, a, d_, b)), Index(sym2_index(a, b, rs))) = one;
    return m;
  }

  /// Substitutes each coordinate z_i by the i-th degree-d monomial.
  template <ExactField F>
  MultiPoly<F> pullback(const Vector<F>& quadric_sym2) const {
    const std::size_t rs = sections();
    MultiPoly<F> out(variables());
    for (std::size_t a = 0; a < rs; ++a)
      for (std::size_t b = a; b < rs; ++b) {
        Exponents e = basis(d_)[a];
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = static_cast<std::uint16_t>(e[k] + basis(d_)[b][k]);
        out.add_term(std::move(e), quadric_sym2(Index(sym2_index(a, b, rs))));
      }
    return out;
  }

 private:
  static std::uint32_t key(unsigned ea, unsigned eb) { return (ea << 16) | eb; }

  unsigned n_, d_;
  std::vector<std::vector<Exponents>> bases_;
  std::vector<std::map<Exponents, std::size_t>> index_;
  std::map<std::uint32_t, std::vector<std::size_t>> products_;
};

// ---------------------------------------------------------------------------
// QuadricSpace
// ---------------------------------------------------------------------------

/// A basis {Q_0, ..., Q_m} of a space of quadrics in z_0 .. z_r, stored as the rows
/// of a matrix in symmetric-square coordinates. Coordinates of a member are read
/// off the reduced echelon form of the basis and transported back through the
/// recorded change of basis.
template <ExactField F>
class QuadricSpace {
 public:
  QuadricSpace() = default;
  QuadricSpace(std::size_t ambient, Matrix<F> basis, const F& one) : ambient_(ambient), basis_(std::move(basis)), one_(one) {
    if (std::size_t(basis_.cols()) != sym2_size(ambient_)) throw ArityMismatch("basis rows must be sym2 vectors");
    const Index m = basis_.rows();
    Matrix<F> aug(m, basis_.cols() + m);
    aug << basis_, identity<F>(m, one_);
    const RowEchelon<F> e = row_echelon<F>(aug);
    if (e.rank() != m || (m > 0 && e.pivots.back() >= basis_.cols()))
      throw std::invalid_argument("quadric basis is linearly dependent");
    pivots_ = e.pivots;
    transform_ = e.reduced.rightCols(m);  // T with T * basis = reduced
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dimension() const { return std::size_t(basis_.rows()); }
  const Matrix<F>& basis() const { return basis_; }
  const F& one() const { return one_; }
  Vector<F> sym2(std::size_t j) const { return basis_.row(Index(j)).transpose(); }

  SymmetricForm<F> hessian(std::size_t j) const { return SymmetricForm<F>(hessian_of_sym2<F>(sym2(j), ambient_)); }
  MultiPoly<F> poly(std::size_t j) const { return quadric_poly<F>(sym2(j), ambient_); }

  /// sum_j c_j Q_j in symmetric-square coordinates.
  Vector<F> combine(const Vector<F>& c) const { return basis_.transpose() * c; }
  SymmetricForm<F> form(const Vector<F>& c) const { return SymmetricForm<F>(hessian_of_sym2<F>(combine(c), ambient_)); }
  Vector<F> sym2_of(const SymmetricForm<F>& s) const { return sym2_of_hessian<F>(s.hessian(), one_ / (one_ + one_)); }

  /// Coordinates in the basis, or none when v is outside the span.
  std::optional<Vector<F>> coordinates(const Vector<F>& v) const {
    std::vector<F> vv(v.data(), v.data() + v.size());
    auto c = coordinates_generic<F>(vv, F(0) * one_);
    if (!c) return std::nullopt;
    return Eigen::Map<const Vector<F>>(c->data(), Index(c->size()));
  }

  /// As coordinates(), over any ring R that is an F-algebra (for symbolic entries).
  template <class R>
  std::optional<std::vector<R>> coordinates_generic(const std::vector<R>& v, const R& zero) const {
    const std::size_t m = dimension();
    std::vector<R> out(m, zero);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        const F& t = transform_(Index(k), Index(j));
        if (!t.is_zero()) out[j] = out[j] + v[std::size_t(pivots_[k])] * t;
      }
    for (Index col = 0; col < basis_.cols(); ++col) {
      R acc = zero;
      for (std::size_t j = 0; j < m; ++j) {
        const F& b = basis_(Index(j), col);
        if (!b.is_zero()) acc = acc + out[j] * b;
      }
      if (!(acc == v[std::size_t(col)])) return std::nullopt;
    }
    return out;
  }

  template <class Ext>
  QuadricSpace<typename Ext::element_type> lift(const Ext& ext) const {
    using E = typename Ext::element_type;
    Matrix<E> b(basis_.rows(), basis_.cols());
    for (Index i = 0; i < b.rows(); ++i)
      for (Index j = 0; j < b.cols(); ++j) b(i, j) = field_traits<F>::lift(ext, basis_(i, j));
    return QuadricSpace<E>(ambient_, std::move(b), ext(1));
  }

 private:
  std::size_t ambient_ = 0;
  Matrix<F> basis_;
  F one_;
  std::vector<Index> pivots_;
  Matrix<F> transform_;
};

/// I(X, L)_2 of a Veronese model: the kernel of the multiplication map, as canonical
/// reduced-echelon rows. Throws TheoremViolation if the map is not surjective.
template <class Field>
QuadricSpace<typename Field::element_type> quad_ideal_basis(const VeroneseModel& model, const Field& k) {
  using F = typename Field::element_type;
  const F one = k(1);
  const Matrix<F> mult = model.multiplication_matrix<F>(one);
  const RrefResult<F> ker = rref<F>(mult, one);
  if (std::size_t(ker.rank) != model.h0(2 * model.d()))
    throw TheoremViolation("multiplication map of " + model.name() + " is not surjective");
  Matrix<F> rows(Index(ker.kernel_basis.size()), mult.cols());
  for (std::size_t i = 0; i < ker.kernel_basis.size(); ++i) rows.row(Index(i)) = ker.kernel_basis[i].transpose();
  RowEchelon<F> canon = row_echelon<F>(rows);
  return QuadricSpace<F>(model.sections(), std::move(canon.reduced), one);
}

// ---------------------------------------------------------------------------
// Elliptic normal quintic on the scroll S(1,2) = {[sx : tx : s^2 y : sty : t^2 y]}
// ---------------------------------------------------------------------------

/// The five defining quadrics, one per line, in z0..z4.
inline constexpr const char* kEllipticQuinticQuadrics[5] = {
    "z0*z3 - z1*z2",
    "z0*z4 - z1*z3",
    "z2*z4 - z3^2",
    "z0^2 + z0*z2 + z0*z4 + z2^2 + z3*z4",
    "z0*z1 + z1*z2 + z1*z4 + z2*z3 + z4^2",
};

/// Symmetric-square vector of a quadric given as text in z0..z{vars-1}.
template <class Field>
Vector<typename Field::element_type> parse_quadric(std::string_view text, std::size_t vars, const Field& k) {
  using F = typename Field::element_type;
  const auto poly = parse_poly(text, default_variable_names(vars, "z"), k);
  Vector<F> v = Vector<F>::Constant(Index(sym2_size(vars)), k(0));
  for (const auto& [e, c] : poly.terms()) {
    if (total_degree(e) != 2) throw ParseError("not a quadric: " + std::string(text));
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned j = 0; j < e[i]; ++j) idx.push_back(i);
    v(Index(sym2_index(idx[0], idx[1], vars))) = c;
  }
  return v;
}

/// QuadricSpace spanned by the given quadric texts, in the given order.
template <class Field>
QuadricSpace<typename Field::element_type> quadric_space_from_text(const std::vector<std::string>& quadrics,
                                                                   std::size_t vars, const Field& k) {
  using F = typename Field::element_type;
  Matrix<F> rows(Index(quadrics.size()), Index(sym2_size(vars)));
  for (std::size_t i = 0; i < quadrics.size(); ++i) rows.row(Index(i)) = parse_quadric(quadrics[i], vars, k).transpose();
  return QuadricSpace<F>(vars, std::move(rows), k(1));
}

/// The fixture's five quadrics, verbatim and in order. Rejects characteristic 3.
template <class Field>
QuadricSpace<typename Field::element_type> fixture_elliptic_quintic(const Field& k) {
  if (k.characteristic() == 3) throw UnsupportedCharacteristic("the elliptic quintic fixture needs characteristic != 2, 3");
  return quadric_space_from_text({std::begin(kEllipticQuinticQuadrics), std::end(kEllipticQuinticQuadrics)}, 5, k);
}

/// Points of the fixture curve: for a ruling parameter (s, t), the roots [x : y] of
/// s x^2 + (s^2 + t^2) x y + (s^3 + t^3) y^2, pushed onto the scroll.
class CurveSampler {
 public:
  explicit CurveSampler(const PrimeField& k);

  const PrimeField& field() const { return k_; }

  /// All curve points over (s, t) with coordinates in the base field (0, 1 or 2 points).
  std::vector<Vector<Fp>> points_at(const Fp& s, const Fp& t) const;

  /// `count` seeded draws of (s, t); each draw contributes its first point, if any.
  std::vector<Vector<Fp>> sample(std::size_t count, std::uint64_t seed) const;

 private:
  PrimeField k_;
};

}  // namespace quadrank
