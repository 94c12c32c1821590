#pragma once

// The symmetric matrix of linear forms M(y) = sum_j y_j H(Q_j), ranks of its
// specializations, and the scan of P^m(F_p) that bins points by rank.

#include <map>
#include <string>
#include <vector>

#include "quadrank/embedding.hpp"

namespace quadrank {

template <ExactField F>
class SymLinearMatrix {
 public:
  explicit SymLinearMatrix(std::vector<Matrix<F>> slices) : slices_(std::move(slices)) {
    if (slices_.empty()) throw std::invalid_argument("matrix of linear forms needs at least one slice");
    for (const auto& s : slices_)
      if (s.rows() != size() || s.cols() != size()) throw ArityMismatch("slices must share one square shape");
  }

  Index size() const { return slices_.front().rows(); }
  /// Number of y variables, m + 1.
  std::size_t forms() const { return slices_.size(); }
  const Matrix<F>& slice(std::size_t j) const { return slices_.at(j); }

  /// M(y). Throws on a zero or wrongly sized y.
  Matrix<F> at(const Vector<F>& y) const {
    if (std::size_t(y.size()) != forms()) throw ArityMismatch("point has the wrong number of coordinates");
    bool nonzero = false;
    for (Index j = 0; j < y.size(); ++j) nonzero = nonzero || !y(j).is_zero();
    if (!nonzero) throw std::invalid_argument("the zero vector is not a projective point");
    Matrix<F> m = y(0) * slices_[0];
    for (std::size_t j = 1; j < forms(); ++j) m += y(Index(j)) * slices_[j];
    return m;
  }

  /// Entry (i, j) as a linear form in y_0 .. y_m.
  MultiPoly<F> entry(Index i, Index j) const {
    MultiPoly<F> f(forms());
    for (std::size_t k = 0; k < forms(); ++k) {
      Exponents e(forms(), 0);
      e[k] = 1;
      f.add_term(std::move(e), slices_[k](i, j));
    }
    return f;
  }

 private:
  std::vector<Matrix<F>> slices_;
};

template <ExactField F>
SymLinearMatrix<F> assemble_m(const QuadricSpace<F>& qs) {
  std::vector<Matrix<F>> slices;
  for (std::size_t j = 0; j < qs.dimension(); ++j) slices.push_back(qs.hessian(j).hessian());
  return SymLinearMatrix<F>(std::move(slices));
}

template <ExactField F>
Index rank_at(const SymLinearMatrix<F>& m, const Vector<F>& y) {
  return rank<F>(m.at(y));
}

// ---------------------------------------------------------------------------
// Enumeration over F_p
// ---------------------------------------------------------------------------

/// |P^{k-1}(F_p)| for k homogeneous coordinates; saturates at UINT64_MAX.
std::uint64_t projective_count(std::uint64_t p, std::size_t coords);

/// The index-th canonical representative (first nonzero coordinate 1), ordered by the
/// position of that leading 1, then lexicographically in base p.
void projective_point(std::uint64_t p, std::size_t coords, std::uint64_t index, std::uint32_t* out);
std::uint64_t projective_index(std::uint64_t p, std::size_t coords, const std::uint32_t* point);

/// Rank of M(y) over F_p on raw residues; the hot loop of the scans.
class FpRankKernel {
 public:
  explicit FpRankKernel(const SymLinearMatrix<Fp>& m);

  std::uint32_t modulus() const { return p_; }
  std::size_t size() const { return n_; }
  std::size_t forms() const { return forms_; }
  /// Rank of sum_j y_j H_j; `scratch` must hold size()^2 entries.
  unsigned rank(const std::uint32_t* y, std::uint64_t* scratch) const;

 private:
  std::uint32_t p_;
  std::size_t n_, forms_;
  std::vector<std::uint64_t> slices_;  // forms_ blocks of n_ * n_ residues
  std::vector<std::uint64_t> inverse_;
};

struct PhiPoint {
  std::vector<std::uint32_t> coords;
  unsigned rank = 0;
  friend bool operator==(const PhiPoint&, const PhiPoint&) = default;
  friend auto operator<=>(const PhiPoint&, const PhiPoint&) = default;
};

struct ScanOptions {
  bool exhaustive = true;
  std::uint64_t samples = 0;  ///< used when !exhaustive
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::uint64_t budget = 100'000'000;  ///< maximum exhaustive point count
  std::size_t max_listed = 200'000;
  static constexpr std::uint64_t kChunk = 4096;
};

struct PhiReport {
  std::string field;
  unsigned k = 0;
  bool exhaustive = true;
  std::uint64_t total = 0;    ///< |P^m(F_p)|
  std::uint64_t scanned = 0;
  std::uint64_t seed = 0;
  std::uint64_t chunks = 0;   ///< chunk c draws from derive_seed(seed, c) when sampling
  std::map<unsigned, std::uint64_t> rank_counts;
  std::vector<PhiPoint> points;  ///< rank <= k, sorted, distinct
  bool truncated = false;

  std::uint64_t at_most(unsigned r) const {
    std::uint64_t c = 0;
    for (const auto& [rk, n] : rank_counts)
      if (rk <= r) c += n;
    return c;
  }
};

/// Bins the points of P^m(F_p) (or a seeded sample) by rank of M(y), listing those of
/// rank <= k. Throws BudgetExceeded when an exhaustive scan is over budget.
PhiReport enumerate_phi(const SymLinearMatrix<Fp>& m, const PrimeField& k, unsigned max_rank, const ScanOptions& opt);

/// True iff an exhaustive scan finds no point of rank <= 2.
bool phi2_empty_check(const SymLinearMatrix<Fp>& m, const PrimeField& k, const ScanOptions& opt = {});

// ---------------------------------------------------------------------------
// The fixture's expected matrix
// ---------------------------------------------------------------------------

/// Expected M(x1, ..., x5) for the elliptic quintic fixture, one row per line,
/// entries separated by ';'.
inline constexpr const char* kEllipticQuinticMatrix[5] = {
    "2*x4; x5; x4; x1; x2 + x4",
    "x5; 0; x5 - x1; -x2; x5",
    "x4; x5 - x1; 2*x4; x5; x3",
    "x1; -x2; x5; -2*x3; x4",
    "x2 + x4; x5; x3; x4; 2*x5",
};

struct MatrixDiff {
  Index row = 0, col = 0;
  std::string expected, actual;
};

struct MatrixCheck {
  bool match = false;
  std::vector<MatrixDiff> diffs;
  std::vector<std::vector<std::string>> actual;  ///< rendered entries
};

/// Compares M against expected rows of ';'-separated linear forms in the given names.
template <class Field>
MatrixCheck matrix_check(const SymLinearMatrix<typename Field::element_type>& m, const std::vector<std::string>& rows,
                         const std::vector<std::string>& names, const Field& k) {
  MatrixCheck out;
  if (rows.size() != std::size_t(m.size())) throw ArityMismatch("expected matrix has the wrong number of rows");
  for (Index i = 0; i < m.size(); ++i) {
    std::vector<std::string> cells;
    std::string_view row = rows[std::size_t(i)];
    while (true) {
      const auto cut = row.find(';');
      cells.emplace_back(row.substr(0, cut));
      if (cut == std::string_view::npos) break;
      row.remove_prefix(cut + 1);
    }
    if (cells.size() != std::size_t(m.size())) throw ArityMismatch("expected matrix row has the wrong length");
    out.actual.emplace_back();
    for (Index j = 0; j < m.size(); ++j) {
      const auto want = parse_poly(cells[std::size_t(j)], names, k);
      const auto got = m.entry(i, j);
      out.actual.back().push_back(to_string(got, names));
      if (!(want == got)) out.diffs.push_back({i, j, to_string(want, names), to_string(got, names)});
    }
  }
  out.match = out.diffs.empty();
  return out;
}

template <class Field>
MatrixCheck fixture_matrix_check(const QuadricSpace<typename Field::element_type>& qs, const Field& k) {
  return matrix_check(assemble_m(qs), {std::begin(kEllipticQuinticMatrix), std::end(kEllipticQuinticMatrix)},
                      {"x1", "x2", "x3", "x4", "x5"}, k);
}

}  // namespace quadrank
