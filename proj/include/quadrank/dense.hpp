#pragma once

// Exact dense linear algebra over the fields of field.hpp, on Eigen storage:
// row echelon forms, rank, kernels, determinants, congruence diagonalization of
// symmetric forms and the rank-3 splitting Q = x*y - z^2.

#include <algorithm>
#include <array>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "quadrank/field.hpp"

namespace quadrank {

using Index = Eigen::Index;

template <class F>
using Matrix = Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>;
template <class F>
using Vector = Eigen::Matrix<F, Eigen::Dynamic, 1>;

/// Throws FieldMismatch unless all bound entries carry the same field tag.
template <ExactField F, class Derived>
void require_common_field(const Eigen::MatrixBase<Derived>& m) {
  std::uint64_t tag = 0;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const std::uint64_t t = m(i, j).tag();
      if (t == 0) continue;
      if (tag == 0) tag = t;
      else if (t != tag) throw FieldMismatch("matrix mixes entries from different fields");
    }
  }
}

template <ExactField F>
Matrix<F> identity(Index n, const F& one) {
  Matrix<F> m = Matrix<F>::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = one;
  return m;
}

template <ExactField F>
struct RowEchelon {
  Matrix<F> reduced;          ///< reduced row echelon form, same shape as the input
  std::vector<Index> pivots;  ///< pivot column of each nonzero row
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Gauss-Jordan elimination to the unique reduced row echelon form.
template <ExactField F>
RowEchelon<F> row_echelon(Matrix<F> m) {
  require_common_field<F>(m);
  RowEchelon<F> out;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) m.row(piv).swap(m.row(row));
    const F inv = m(row, col).inv();
    for (Index j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const F f = m(i, col);
      for (Index j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <ExactField F>
struct RrefResult {
  Index rank = 0;
  std::vector<Vector<F>> kernel_basis;  ///< basis of the right kernel, one vector per free column
};

/// Row rank and right kernel of m. Kernel vectors have a 1 in their free column.
template <ExactField F>
RrefResult<F> rref(const Matrix<F>& m, const F& one = F(1)) {
  const RowEchelon<F> e = row_echelon(m);
  RrefResult<F> out;
  out.rank = e.rank();
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (Index c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  for (Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    Vector<F> v = Vector<F>::Zero(m.cols());
    v(free) = one;
    for (Index r = 0; r < e.rank(); ++r) v(e.pivots[static_cast<std::size_t>(r)]) = -e.reduced(r, free);
    out.kernel_basis.push_back(std::move(v));
  }
  return out;
}

/// Rank by forward elimination only (no back substitution).
template <ExactField F>
Index rank(Matrix<F> m) {
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) m.row(piv).swap(m.row(row));
    const F inv = m(row, col).inv();
    for (Index i = row + 1; i < m.rows(); ++i) {
      if (m(i, col).is_zero()) continue;
      const F f = m(i, col) * inv;
      for (Index j = col + 1; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
      m(i, col) = F(0);
    }
    ++row;
  }
  return row;
}

template <ExactField F>
F determinant(Matrix<F> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  F det = F(1);
  const Index n = m.rows();
  for (Index col = 0; col < n; ++col) {
    Index piv = col;
    while (piv < n && m(piv, col).is_zero()) ++piv;
    if (piv == n) return F(0) * det;
    if (piv != col) {
      m.row(piv).swap(m.row(col));
      det = -det;
    }
    det = det * m(col, col);
    const F inv = m(col, col).inv();
    for (Index i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      const F f = m(i, col) * inv;
      for (Index j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

template <ExactField F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m, const F& one) {
  const Index n = m.rows();
  if (n != m.cols()) return std::nullopt;
  Matrix<F> aug(n, 2 * n);
  aug << m, identity<F>(n, one);
  const RowEchelon<F> e = row_echelon<F>(aug);
  if (e.rank() < n || e.pivots[static_cast<std::size_t>(n - 1)] >= n) return std::nullopt;
  return Matrix<F>(e.reduced.rightCols(n));
}

/// Solves a x = b; returns one solution (free variables zero) or none.
template <ExactField F>
std::optional<Vector<F>> solve(const Matrix<F>& a, const Vector<F>& b) {
  Matrix<F> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  const RowEchelon<F> e = row_echelon<F>(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vector<F> x = Vector<F>::Zero(a.cols());
  for (Index r = 0; r < e.rank(); ++r) x(e.pivots[static_cast<std::size_t>(r)]) = e.reduced(r, a.cols());
  return x;
}

// ---------------------------------------------------------------------------
// Quadratic forms
// ---------------------------------------------------------------------------

/// A quadratic form stored by its Hessian H_ij = d^2 Q / dz_i dz_j
/// (so the diagonal holds twice the square coefficients).
template <ExactField F>
class SymmetricForm {
 public:
  SymmetricForm() = default;
  explicit SymmetricForm(Matrix<F> hessian) : h_(std::move(hessian)) {
    if (h_.rows() != h_.cols()) throw std::invalid_argument("Hessian must be square");
    for (Index i = 0; i < h_.rows(); ++i)
      for (Index j = i + 1; j < h_.cols(); ++j)
        if (!(h_(i, j) == h_(j, i))) throw std::invalid_argument("Hessian must be symmetric");
    require_common_field<F>(h_);
  }

  Index size() const { return h_.rows(); }
  const Matrix<F>& hessian() const { return h_; }

  /// Q(z) = z^T H z / 2.
  F evaluate(const Vector<F>& z, const F& half) const { return half * z.dot(h_ * z); }

  friend bool operator==(const SymmetricForm& a, const SymmetricForm& b) {
    return a.h_.rows() == b.h_.rows() && a.h_ == b.h_;
  }

 private:
  Matrix<F> h_;
};

/// Hessian of x*y (x, y linear forms given by coefficient vectors).
template <ExactField F>
Matrix<F> product_hessian(const Vector<F>& x, const Vector<F>& y) {
  return x * y.transpose() + y * x.transpose();
}

/// Hessian of x*y - z^2.
template <ExactField F>
SymmetricForm<F> split_form(const Vector<F>& x, const Vector<F>& y, const Vector<F>& z) {
  return SymmetricForm<F>(Matrix<F>(product_hessian(x, y) - product_hessian(z, z)));
}

template <ExactField F>
Index form_rank(const SymmetricForm<F>& s) {
  return rank<F>(s.hessian());
}

template <ExactField F>
struct Congruence {
  Matrix<F> basis_change;  ///< P with P^T H P diagonal
  std::vector<F> diagonal;
};

/// Symmetric Gaussian elimination (char != 2). Already diagonal input returns the identity.
template <ExactField F>
Congruence<F> diagonalize_congruence(const SymmetricForm<F>& s, const F& one) {
  Matrix<F> a = s.hessian();
  const Index n = a.rows();
  Matrix<F> p = identity<F>(n, one);
  for (Index k = 0; k < n; ++k) {
    if (a(k, k).is_zero()) {
      Index j = k + 1;
      while (j < n && a(k, j).is_zero()) ++j;
      if (j == n) continue;  // row k already zero beyond the diagonal
      if (!a(j, j).is_zero()) {
        a.row(k).swap(a.row(j));
        a.col(k).swap(a.col(j));
        p.col(k).swap(p.col(j));
      } else {
        // e_k <- e_k + e_j gives a(k,k) = 2 a(k,j) != 0
        a.row(k) += a.row(j);
        a.col(k) += a.col(j);
        p.col(k) += p.col(j);
      }
    }
    const F inv = a(k, k).inv();
    for (Index i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      const F c = a(i, k) * inv;
      a.row(i) -= c * a.row(k);
      a.col(i) -= c * a.col(k);
      p.col(i) -= c * p.col(k);
    }
  }
  Congruence<F> out{std::move(p), {}};
  for (Index i = 0; i < n; ++i) out.diagonal.push_back(a(i, i));
  return out;
}

template <ExactField F>
struct LinearSplit {
  Vector<F> x, y, z;  ///< Q = x*y - z^2
};

template <ExactField F>
struct ExtensionRequired {
  F discriminant;  ///< product of the three nonzero diagonal coefficients; not a square
};

template <ExactField F>
using Rank3Split = std::variant<LinearSplit<F>, ExtensionRequired<F>>;

namespace detail {

template <ExactField F>
Index nonzero_count(const Vector<F>& v) {
  Index c = 0;
  for (Index i = 0; i < v.size(); ++i) c += v(i).is_zero() ? 0 : 1;
  return c;
}

/// Normalizes x to leading coefficient 1 (y absorbs the scale) and z to a
/// canonical sign.
template <ExactField F>
void normalize_split(LinearSplit<F>& s) {
  Index lead = 0;
  while (lead < s.x.size() && s.x(lead).is_zero()) ++lead;
  if (lead < s.x.size()) {
    const F c = s.x(lead);
    s.x /= c;
    s.y *= c;
  }
  lead = 0;
  while (lead < s.z.size() && s.z(lead).is_zero()) ++lead;
  if (lead < s.z.size()) {
    const F c = s.z(lead);
    const auto r = sqrt(c * c);
    if (r && !(*r == c)) s.z = -s.z;
  }
}

/// Isotropic vector of a*X^2 + b*Y^2 + c*Z^2 found without a hyperbolic pair,
/// by scanning X over a finite field. For Q we try a small integer box.
template <ExactField F>
std::optional<std::array<F, 3>> isotropic_search(const std::array<F, 3>& d) {
  const F one = d[0] / d[0];
  if constexpr (field_traits<F>::finite) {
    const auto k = field_traits<F>::field_of(d[0]);
    for (std::uint64_t i = 0; i < k.size(); ++i) {
      const F x = k.element(i);
      // d0 x^2 + d1 y^2 + d2 = 0
      if (auto y = sqrt((-d[2] - d[0] * x * x) / d[1])) return std::array<F, 3>{x, *y, one};
    }
    return std::nullopt;
  } else {
    constexpr long kBox = 12;
    for (long z = 1; z <= kBox; ++z)
      for (long x = -kBox; x <= kBox; ++x) {
        const F fx = one * F(x), fz = one * F(z);
        if (auto y = sqrt((-d[2] * fz * fz - d[0] * fx * fx) / d[1])) return std::array<F, 3>{fx, *y, fz};
      }
    return std::nullopt;
  }
}

}  // namespace detail

/// Writes a rank-3 form as x*y - z^2. Returns ExtensionRequired when no such
/// split exists over the coefficient field (non-square discriminant, or no
/// isotropic vector found over Q).
///
/// Tie-breaking: diagonalize by congruence; among the slot pairs (i, j) in pivot
/// order that form a hyperbolic plane, take the one giving the sparsest
/// (x, y, z); otherwise build the hyperbolic plane from an isotropic vector.
template <ExactField F>
Rank3Split<F> rank3_split(const SymmetricForm<F>& s) {
  const Index n = s.size();
  if (form_rank(s) != 3) throw RankMismatch("rank3_split needs a rank-3 form");
  F one = F(1);
  for (Index i = 0; i < n && one.tag() == 0; ++i)
    for (Index j = 0; j < n; ++j)
      if (!s.hessian()(i, j).is_zero()) {
        one = s.hessian()(i, j) / s.hessian()(i, j);
        break;
      }
  const Congruence<F> cg = diagonalize_congruence(s, one);
  const Matrix<F> lin = *inverse<F>(cg.basis_change, one);  // rows: coordinate forms L_k
  const F half = one / (one + one);

  // Q = sum a_k L_k^2 with a_k = D_k / 2 over the three nonzero slots.
  std::vector<Index> slot;
  for (Index k = 0; k < n; ++k)
    if (!cg.diagonal[static_cast<std::size_t>(k)].is_zero()) slot.push_back(k);
  std::array<F, 3> a;
  std::array<Vector<F>, 3> form;
  for (int k = 0; k < 3; ++k) {
    a[k] = cg.diagonal[static_cast<std::size_t>(slot[k])] * half;
    form[k] = lin.row(slot[k]).transpose();
  }
  const F disc = a[0] * a[1] * a[2];
  if (!is_square(disc)) return ExtensionRequired<F>{disc};

  std::optional<LinearSplit<F>> best;
  Index best_weight = 0;
  constexpr int kPairs[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};
  for (const auto& pr : kPairs) {
    const int i = pr[0], j = pr[1], k = pr[2];
    const auto r = sqrt(-a[j] / a[i]);
    if (!r) continue;
    // a_i (L_i + r L_j)(L_i - r L_j) - (sqrt(-a_k) L_k)^2
    const auto w = sqrt(-a[k]);
    LinearSplit<F> cand{a[i] * (form[i] + *r * form[j]), form[i] - *r * form[j], *w * form[k]};
    detail::normalize_split(cand);
    const Index weight = detail::nonzero_count(cand.x) + detail::nonzero_count(cand.y) + detail::nonzero_count(cand.z);
    if (!best || weight < best_weight) {
      best = std::move(cand);
      best_weight = weight;
    }
  }
  if (best) return *best;

  // General case: hyperbolic pair (e, f) from an isotropic vector e, complement g.
  const auto iso = detail::isotropic_search<F>(a);
  if (!iso) return ExtensionRequired<F>{disc};
  auto bil = [&](const std::array<F, 3>& u, const std::array<F, 3>& v) {
    return a[0] * u[0] * v[0] + a[1] * u[1] * v[1] + a[2] * u[2] * v[2];
  };
  const std::array<F, 3> e = *iso;
  std::array<F, 3> f{F(0) * one, F(0) * one, F(0) * one};
  for (int k = 0; k < 3; ++k)
    if (!(a[k] * e[k]).is_zero()) {
      f[k] = one / (a[k] * e[k]);  // b(e, f) = 1
      break;
    }
  const F qf = bil(f, f) * half;
  for (int k = 0; k < 3; ++k) f[k] = f[k] - qf * e[k];
  // g spans the orthogonal complement of {e, f}: cross product of (a.e) and (a.f)
  const std::array<F, 3> ae{a[0] * e[0], a[1] * e[1], a[2] * e[2]};
  const std::array<F, 3> af{a[0] * f[0], a[1] * f[1], a[2] * f[2]};
  const std::array<F, 3> g{ae[1] * af[2] - ae[2] * af[1], ae[2] * af[0] - ae[0] * af[2],
                           ae[0] * af[1] - ae[1] * af[0]};
  const F cg3 = bil(g, g);
  const auto kk = sqrt(-cg3);
  if (!kk) return ExtensionRequired<F>{disc};
  // w = alpha e + beta f + gamma g; q(w) = 2 b(w,f) b(w,e) + b(w,g)^2 / c
  auto coordinate_form = [&](const std::array<F, 3>& v) {
    Vector<F> out = Vector<F>::Zero(n);
    for (int k = 0; k < 3; ++k) out += (a[k] * v[k]) * form[k];
    return out;
  };
  LinearSplit<F> split{(one + one) * coordinate_form(f), coordinate_form(e), coordinate_form(g) / *kk};
  detail::normalize_split(split);
  return split;
}

}  // namespace quadrank
