#pragma once

// The rank-3 quadrics Q(s, t, h) = phi(s^2 h) phi(t^2 h) - phi(s t h)^2 attached to a
// decomposition L = A^2 (x) B, their coefficient polynomials G_j in the coordinates of
// (s, t, h), and the structural checks built on them.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "quadrank/binary_forms.hpp"
#include "quadrank/rank_locus.hpp"

namespace quadrank {

template <ExactField F>
using Section = std::vector<F>;

template <ExactField F>
struct QabResult {
  Vector<F> coords;               ///< coordinates in the quadric basis
  Vector<F> sym2;                 ///< the quadric in symmetric-square coordinates
  std::array<Vector<F>, 3> forms; ///< phi(s^2 h), phi(t^2 h), phi(s t h)
  bool is_zero() const {
    for (Index i = 0; i < coords.size(); ++i)
      if (!coords(i).is_zero()) return false;
    return true;
  }
};

/// Q(s, t, h) for sections s, t of O(ell) and h of O(d - 2 ell). Throws TheoremViolation
/// if the result is not in the span of the quadric basis.
template <ExactField F>
QabResult<F> q_ab(const VeroneseModel& model, const QuadricSpace<F>& qs, const SigmaEntry& e, const Section<F>& s,
                  const Section<F>& t, const Section<F>& h) {
  const F zero = F(0) * qs.one();
  const auto s2 = model.multiply_sections(s, e.ell, s, e.ell, zero);
  const auto t2 = model.multiply_sections(t, e.ell, t, e.ell, zero);
  const auto st = model.multiply_sections(s, e.ell, t, e.ell, zero);
  const auto x = model.multiply_sections(s2, 2 * e.ell, h, e.b_power, zero);
  const auto y = model.multiply_sections(t2, 2 * e.ell, h, e.b_power, zero);
  const auto z = model.multiply_sections(st, 2 * e.ell, h, e.b_power, zero);
  auto xy = product_sym2(x, y, zero);
  const auto zz = product_sym2(z, z, zero);
  for (std::size_t i = 0; i < xy.size(); ++i) xy[i] -= zz[i];
  QabResult<F> out;
  out.sym2 = Eigen::Map<const Vector<F>>(xy.data(), Index(xy.size()));
  auto c = qs.coordinates(out.sym2);
  if (!c) throw TheoremViolation("Q(s,t,h) is not in I_2 for " + model.name() + ", ell = " + std::to_string(e.ell));
  out.coords = std::move(*c);
  out.forms = {Eigen::Map<const Vector<F>>(x.data(), Index(x.size())),
               Eigen::Map<const Vector<F>>(y.data(), Index(y.size())),
               Eigen::Map<const Vector<F>>(z.data(), Index(z.size()))};
  return out;
}

template <class Field>
Section<typename Field::element_type> random_section(const VeroneseModel& model, unsigned degree, const Field& k,
                                                     Rng& rng) {
  Section<typename Field::element_type> s;
  for (std::size_t i = 0; i < model.h0(degree); ++i) s.push_back(k.random(rng));
  return s;
}

/// Rank of the matrix whose rows are the given vectors.
template <ExactField F>
Index span_rank(const std::vector<Section<F>>& rows) {
  if (rows.empty()) return 0;
  Matrix<F> m(Index(rows.size()), Index(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(Index(i), Index(j)) = rows[i][j];
  return rank<F>(m);
}

template <ExactField F>
bool is_zero_section(const Section<F>& s) {
  for (const auto& x : s)
    if (!x.is_zero()) return false;
  return true;
}

/// Scales v so its first nonzero entry is 1 (a canonical projective representative).
template <ExactField F>
Vector<F> projective_normalize(Vector<F> v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) {
      v /= F(v(i));
      break;
    }
  return v;
}

// ---------------------------------------------------------------------------
// Coefficient polynomials and their Pluecker certificate
// ---------------------------------------------------------------------------

/// p_{ij} p_{kl} z^e, with (i, j) <= (k, l) as pairs and e a degree-2 exponent in z.
template <ExactField F>
struct PluckerTerm {
  std::array<unsigned, 2> first{}, second{};
  Exponents z;
  F coeff;
};

template <ExactField F>
struct PluckerCertificate {
  std::vector<std::vector<PluckerTerm<F>>> expressions;  ///< one per G_j
  std::size_t basis_size = 0;                            ///< number of p p z z products
  Index basis_rank = 0;                                  ///< their span dimension
};

/// The system G_0 .. G_m for one entry, in variables x_0..x_p, y_0..y_p, z_0..z_q.
template <ExactField F>
struct WabSystem {
  SigmaEntry entry;
  std::vector<std::string> names;
  std::vector<MultiPoly<F>> g;
  std::optional<PluckerCertificate<F>> certificate;

  std::size_t arity() const { return names.size(); }
  std::size_t x_var(unsigned i) const { return i; }
  std::size_t y_var(unsigned i) const { return entry.p + 1 + i; }
  std::size_t z_var(unsigned i) const { return 2 * (entry.p + 1) + i; }

  /// Degrees of a monomial in the x, y and z blocks.
  std::array<unsigned, 3> block_degrees(const Exponents& e) const {
    std::array<unsigned, 3> d{0, 0, 0};
    for (std::size_t i = 0; i < e.size(); ++i) d[i <= entry.p ? 0 : i <= 2 * entry.p + 1 ? 1 : 2] += e[i];
    return d;
  }

  /// Largest block degrees over all monomials of all G_j.
  std::array<unsigned, 3> max_multidegree() const {
    std::array<unsigned, 3> d{0, 0, 0};
    for (const auto& gj : g)
      for (const auto& [e, c] : gj.terms()) {
        const auto b = block_degrees(e);
        for (int k = 0; k < 3; ++k) d[k] = std::max(d[k], b[k]);
      }
    return d;
  }

  std::vector<F> evaluate(std::span<const F> point) const {
    std::vector<F> out;
    for (const auto& gj : g) out.push_back(gj.eval(point));
    return out;
  }

  /// Point (x, y, z) from the coordinate vectors of s, t, h.
  static std::vector<F> point(const Section<F>& s, const Section<F>& t, const Section<F>& h) {
    std::vector<F> pt(s);
    pt.insert(pt.end(), t.begin(), t.end());
    pt.insert(pt.end(), h.begin(), h.end());
    return pt;
  }
};

/// Default cap on C(p+2,2)^2 * C(q+2,2), the size of the multidegree-(2,2,2) block.
inline constexpr std::uint64_t kSymbolicBudget = 200'000;

template <ExactField F>
WabSystem<F> coefficient_polys(const VeroneseModel& model, const QuadricSpace<F>& qs, const SigmaEntry& e,
                               std::uint64_t budget = kSymbolicBudget) {
  const std::uint64_t block = binomial(e.p + 2, 2) * binomial(e.p + 2, 2) * binomial(e.q + 2, 2);
  if (block > budget)
    throw BudgetExceeded("symbolic block of size " + std::to_string(block) + " exceeds " + std::to_string(budget));
  using P = MultiPoly<F>;
  WabSystem<F> sys;
  sys.entry = e;
  for (unsigned i = 0; i <= e.p; ++i) sys.names.push_back("x" + std::to_string(i));
  for (unsigned i = 0; i <= e.p; ++i) sys.names.push_back("y" + std::to_string(i));
  for (unsigned i = 0; i <= e.q; ++i) sys.names.push_back("z" + std::to_string(i));
  const std::size_t n = sys.arity();
  const F one = qs.one();
  const P zero(n);
  std::vector<P> s, t, h;
  for (unsigned i = 0; i <= e.p; ++i) s.push_back(P::variable(n, sys.x_var(i), one));
  for (unsigned i = 0; i <= e.p; ++i) t.push_back(P::variable(n, sys.y_var(i), one));
  for (unsigned i = 0; i <= e.q; ++i) h.push_back(P::variable(n, sys.z_var(i), one));
  const auto s2 = model.multiply_sections(s, e.ell, s, e.ell, zero);
  const auto t2 = model.multiply_sections(t, e.ell, t, e.ell, zero);
  const auto st = model.multiply_sections(s, e.ell, t, e.ell, zero);
  const auto x = model.multiply_sections(s2, 2 * e.ell, h, e.b_power, zero);
  const auto y = model.multiply_sections(t2, 2 * e.ell, h, e.b_power, zero);
  const auto z = model.multiply_sections(st, 2 * e.ell, h, e.b_power, zero);
  auto q = product_sym2(x, y, zero);
  const auto zz = product_sym2(z, z, zero);
  for (std::size_t i = 0; i < q.size(); ++i) q[i] -= zz[i];
  auto g = qs.coordinates_generic(q, zero);
  if (!g) throw TheoremViolation("symbolic Q(s,t,h) is not in I_2 for " + model.name());
  sys.g = std::move(*g);
  return sys;
}

namespace detail {

template <ExactField F>
MultiPoly<F> plucker(const WabSystem<F>& sys, unsigned i, unsigned j, const F& one) {
  using P = MultiPoly<F>;
  const std::size_t n = sys.arity();
  return P::variable(n, sys.x_var(i), one) * P::variable(n, sys.y_var(j), one) -
         P::variable(n, sys.x_var(j), one) * P::variable(n, sys.y_var(i), one);
}

}  // namespace detail

/// Expresses every G_j in the products p_{ij} p_{kl} z_a z_b by an exact linear solve and
/// re-verifies the expression by expansion. Throws TheoremViolation when some G_j is not
/// in that span.
template <ExactField F>
PluckerCertificate<F> plucker_certify(WabSystem<F>& sys, const F& one) {
  const SigmaEntry& e = sys.entry;
  const std::size_t n = sys.arity();
  std::vector<std::array<unsigned, 2>> pairs;
  for (unsigned i = 0; i <= e.p; ++i)
    for (unsigned j = i + 1; j <= e.p; ++j) pairs.push_back({i, j});
  const auto zmon = monomials_of_degree(e.q + 1, 2);

  struct Column {
    std::size_t a, b;
    Exponents z;
    MultiPoly<F> poly;
  };
  std::vector<Column> cols;
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = a; b < pairs.size(); ++b) {
      const MultiPoly<F> pp = detail::plucker(sys, pairs[a][0], pairs[a][1], one) *
                              detail::plucker(sys, pairs[b][0], pairs[b][1], one);
      for (const auto& zm : zmon) {
        Exponents full(n, 0);
        for (unsigned k = 0; k <= e.q; ++k) full[sys.z_var(k)] = zm[k];
        cols.push_back({a, b, zm, pp * MultiPoly<F>::monomial(full, one)});
      }
    }

  std::map<Exponents, Index, GradedLexGreater> row_of;
  for (const auto& c : cols)
    for (const auto& [m, coeff] : c.poly.terms()) row_of.try_emplace(m, Index(row_of.size()));
  Matrix<F> a = Matrix<F>::Constant(Index(row_of.size()), Index(cols.size()), F(0) * one);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [m, coeff] : cols[j].poly.terms()) a(row_of.at(m), Index(j)) = coeff;

  PluckerCertificate<F> cert;
  cert.basis_size = cols.size();
  cert.basis_rank = rank<F>(a);
  for (std::size_t gi = 0; gi < sys.g.size(); ++gi) {
    Vector<F> b = Vector<F>::Constant(a.rows(), F(0) * one);
    for (const auto& [m, coeff] : sys.g[gi].terms()) {
      auto it = row_of.find(m);
      if (it == row_of.end())
        throw TheoremViolation("G_" + std::to_string(gi) + " has a monomial outside the Pluecker (2,2) block");
      b(it->second) = coeff;
    }
    const auto sol = solve<F>(a, b);
    if (!sol) throw TheoremViolation("G_" + std::to_string(gi) + " is not a combination of p p z z products");
    std::vector<PluckerTerm<F>> terms;
    MultiPoly<F> check(n);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const F c = (*sol)(Index(j));
      if (c.is_zero()) continue;
      terms.push_back({pairs[cols[j].a], pairs[cols[j].b], cols[j].z, c});
      check += c * cols[j].poly;
    }
    if (!(check == sys.g[gi])) throw TheoremViolation("Pluecker expression of G_" + std::to_string(gi) + " does not re-expand");
    cert.expressions.push_back(std::move(terms));
  }
  sys.certificate = cert;
  return cert;
}

template <ExactField F>
std::string to_string(const PluckerTerm<F>& t, const std::vector<std::string>& z_names) {
  const F one = t.coeff / t.coeff;
  std::string s;
  if (t.coeff == -one) {
    s = "-";
  } else if (!(t.coeff == one)) {
    s = to_string(t.coeff);
    if (needs_parentheses(t.coeff)) s = "(" + s + ")";
    s += "*";
  }
  s += "p" + std::to_string(t.first[0]) + std::to_string(t.first[1]);
  s += "*p" + std::to_string(t.second[0]) + std::to_string(t.second[1]);
  for (std::size_t k = 0; k < t.z.size(); ++k) {
    if (t.z[k] == 0) continue;
    s += "*" + z_names.at(k);
    if (t.z[k] > 1) s += "^" + std::to_string(t.z[k]);
  }
  return s;
}

/// Rank of the G_j as vectors of monomial coefficients.
template <ExactField F>
Index independent_count(const WabSystem<F>& sys, const F& one) {
  std::map<Exponents, Index, GradedLexGreater> col_of;
  for (const auto& gj : sys.g)
    for (const auto& [m, c] : gj.terms()) col_of.try_emplace(m, Index(col_of.size()));
  Matrix<F> a = Matrix<F>::Constant(Index(sys.g.size()), Index(col_of.size()), F(0) * one);
  for (std::size_t i = 0; i < sys.g.size(); ++i)
    for (const auto& [m, c] : sys.g[i].terms()) a(Index(i), col_of.at(m)) = c;
  return rank<F>(a);
}

// ---------------------------------------------------------------------------
// Pointwise checks on a system
// ---------------------------------------------------------------------------

struct SpotCheck {
  bool ok = true;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> witnesses;
};

template <ExactField F>
std::string point_string(std::span<const F> pt) {
  std::string s = "(";
  for (std::size_t i = 0; i < pt.size(); ++i) s += (i ? ", " : "") + to_string(pt[i]);
  return s + ")";
}

template <class Field>
std::vector<typename Field::element_type> random_generic_point(const WabSystem<typename Field::element_type>& sys,
                                                               const Field& k, Rng& rng) {
  using F = typename Field::element_type;
  const unsigned len = sys.entry.p + 1;
  for (;;) {
    std::vector<F> s, t, h;
    for (unsigned i = 0; i < len; ++i) s.push_back(k.random(rng));
    for (unsigned i = 0; i < len; ++i) t.push_back(k.random(rng));
    for (unsigned i = 0; i <= sys.entry.q; ++i) h.push_back(k.random(rng));
    if (span_rank<F>({s, t}) == 2 && !is_zero_section(h)) return WabSystem<F>::point(s, t, h);
  }
}

/// G_j(g . (x, y), z) = G_j(x, y, z) for random g in SL_2.
template <class Field>
SpotCheck sl2_invariance_check(const WabSystem<typename Field::element_type>& sys, const Field& k,
                               std::uint64_t trials, std::uint64_t seed) {
  using F = typename Field::element_type;
  SpotCheck out{true, trials, seed, {}};
  Rng rng(derive_seed(seed, 0x51));
  const unsigned len = sys.entry.p + 1;
  for (std::uint64_t tr = 0; tr < trials; ++tr) {
    const auto pt = random_generic_point(sys, k, rng);
    F a = k.random_nonzero(rng), b = k.random(rng), c = k.random(rng);
    const F d = (k(1) + b * c) / a;  // ad - bc = 1
    std::vector<F> moved = pt;
    for (unsigned i = 0; i < len; ++i) {
      moved[i] = a * pt[i] + b * pt[len + i];
      moved[len + i] = c * pt[i] + d * pt[len + i];
    }
    const auto g0 = sys.evaluate(pt), g1 = sys.evaluate(moved);
    for (std::size_t j = 0; j < g0.size(); ++j)
      if (!(g0[j] == g1[j])) {
        out.ok = false;
        out.witnesses.push_back("G_" + std::to_string(j) + " changes at " + point_string<F>(pt));
        break;
      }
  }
  return out;
}

/// Some G_j is nonzero at every sampled point with <s,t> of dimension 2 and h != 0.
template <class Field>
SpotCheck basepoint_free_check(const WabSystem<typename Field::element_type>& sys, const Field& k,
                               std::uint64_t trials, std::uint64_t seed) {
  using F = typename Field::element_type;
  SpotCheck out{true, trials, seed, {}};
  Rng rng(derive_seed(seed, 0xB0));
  for (std::uint64_t tr = 0; tr < trials; ++tr) {
    const auto pt = random_generic_point(sys, k, rng);
    const auto g = sys.evaluate(pt);
    if (std::all_of(g.begin(), g.end(), [](const F& v) { return v.is_zero(); })) {
      out.ok = false;
      out.witnesses.push_back("all G_j vanish at " + point_string<F>(pt));
    }
  }
  return out;
}

/// Negative controls: all G_j vanish when t is a multiple of s, and when h = 0.
template <class Field>
SpotCheck degenerate_vanishing_check(const WabSystem<typename Field::element_type>& sys, const Field& k,
                                     std::uint64_t trials, std::uint64_t seed) {
  using F = typename Field::element_type;
  SpotCheck out{true, trials, seed, {}};
  Rng rng(derive_seed(seed, 0xDE));
  const unsigned len = sys.entry.p + 1;
  for (std::uint64_t tr = 0; tr < trials; ++tr) {
    auto pt = random_generic_point(sys, k, rng);
    if (tr % 2 == 0) {
      const F lambda = k.random(rng);
      for (unsigned i = 0; i < len; ++i) pt[len + i] = lambda * pt[i];
    } else {
      for (unsigned i = 0; i <= sys.entry.q; ++i) pt[2 * len + i] = k(0);
    }
    const auto g = sys.evaluate(pt);
    if (!std::all_of(g.begin(), g.end(), [](const F& v) { return v.is_zero(); })) {
      out.ok = false;
      out.witnesses.push_back("some G_j survives at degenerate " + point_string<F>(pt));
    }
  }
  return out;
}

struct ImageDimension {
  int dimension = -1;           ///< max Jacobian rank - 1
  std::vector<Index> ranks;     ///< Jacobian rank at each tried point
  std::uint64_t seed = 0;
  int expected = 0;             ///< 2p + q - 2
};

/// Dimension of W from the rank of the symbolic Jacobian of (G_0..G_m) at random points
/// of the parameter cone; stops at the expected rank or after `attempts` points.
template <class Field>
ImageDimension image_dim(const WabSystem<typename Field::element_type>& sys, const Field& k, std::uint64_t seed,
                         unsigned attempts = 5) {
  using F = typename Field::element_type;
  ImageDimension out;
  out.seed = seed;
  out.expected = int(2 * sys.entry.p + sys.entry.q) - 2;
  std::vector<std::vector<MultiPoly<F>>> jac(sys.g.size());
  for (std::size_t j = 0; j < sys.g.size(); ++j)
    for (std::size_t v = 0; v < sys.arity(); ++v) jac[j].push_back(sys.g[j].derivative(v));
  Rng rng(derive_seed(seed, 0x1D));
  Index best = -1;
  for (unsigned a = 0; a < attempts; ++a) {
    const auto pt = random_generic_point(sys, k, rng);
    Matrix<F> m(Index(sys.g.size()), Index(sys.arity()));
    for (std::size_t j = 0; j < sys.g.size(); ++j)
      for (std::size_t v = 0; v < sys.arity(); ++v) m(Index(j), Index(v)) = jac[j][v].eval(pt);
    const Index r = rank<F>(m);
    out.ranks.push_back(r);
    best = std::max(best, r);
    if (best == out.expected + 1) break;
  }
  out.dimension = int(best) - 1;
  return out;
}

// ---------------------------------------------------------------------------
// Degree of W(A, B)
// ---------------------------------------------------------------------------

/// 2^(2p+q-2) / p * C(2p+q-2, 2p-2) * C(2p-2, p-1); checked against the independent
/// product 2^n * multinomial(n; 2p-2, q) * Catalan(p-1). Throws TheoremViolation if the
/// two disagree or the division is inexact.
mpz_class degree_formula(unsigned p, unsigned q);
mpz_class degree_closed_form(unsigned p, unsigned q);
mpz_class degree_product_form(unsigned p, unsigned q);

// ---------------------------------------------------------------------------
// Membership on P^1
// ---------------------------------------------------------------------------

enum class MembershipStatus { witnessed, not_rank3, extension_required, reconstruction_failed };

std::string to_string(MembershipStatus s);

/// Q = scalar * Q(s, t, h) with s, t of degree ell and h squarefree.
template <ExactField F>
struct MembershipWitness {
  using E = extension_t<F>;
  unsigned ell = 0;
  MultiPoly<E> s, t, h;
  E scalar;
  bool extension = false;  ///< the linear split needed the quadratic extension
};

template <ExactField F>
struct MembershipResult {
  MembershipStatus status = MembershipStatus::not_rank3;
  Index rank = 0;
  std::optional<MembershipWitness<F>> witness;
  std::string detail;
};

/// Coefficients of a binary form of degree e in the basis u^e, u^(e-1) v, ..., v^e.
template <ExactField F>
Section<F> binary_coefficients(const MultiPoly<F>& f, unsigned e, const F& zero) {
  Section<F> c(e + 1, zero);
  for (const auto& [m, coeff] : f.terms()) {
    if (m[0] + m[1] != e) throw std::invalid_argument("binary form of unexpected degree");
    c[m[1]] = coeff;
  }
  return c;
}

/// Constructive membership test for (P^1, O(d)): split a rank-3 quadric as x y - z^2,
/// pull x, y, z back to binary forms and read s, t, h off their odd/even factorization.
template <ExactField F>
class P1Membership {
 public:
  using E = extension_t<F>;
  using EField = extension_field_t<F>;

  P1Membership(const VeroneseModel& model, const QuadricSpace<F>& qs, bool allow_extension = true)
      : model_(model), qs_(qs), ext_(field_traits<F>::extend(field_traits<F>::field_of(qs.one()))),
        qs_ext_(qs.lift(ext_)), allow_extension_(allow_extension) {
    if (model.n() != 1) throw UnsupportedModel("membership by factorization is implemented on P^1 only");
    const std::uint32_t p = field_traits<F>::field_of(qs.one()).characteristic();
    if (p != 0 && p <= model.d())
      throw UnsupportedCharacteristic("membership on P^1 needs p > d (p = " + std::to_string(p) + ")");
  }

  const EField& extension_field() const { return ext_; }
  const QuadricSpace<E>& lifted_space() const { return qs_ext_; }

  MembershipResult<F> operator()(const Vector<F>& coords) const {
    MembershipResult<F> out;
    const SymmetricForm<F> form = qs_.form(coords);
    out.rank = form_rank(form);
    if (out.rank != 3) {
      out.status = MembershipStatus::not_rank3;
      return out;
    }
    std::optional<LinearSplit<E>> split;
    bool extension = false;
    // c Q has a square discriminant when c is the discriminant of Q; the witness scalar absorbs 1/c.
    F rescale = qs_.one();
    auto base = rank3_split(form);
    if (const auto* er = std::get_if<ExtensionRequired<F>>(&base)) {
      const F c = er->discriminant;
      auto scaled = rank3_split(SymmetricForm<F>(Matrix<F>(form.hessian() * c)));
      if (std::holds_alternative<LinearSplit<F>>(scaled)) {
        rescale = c;
        base = std::move(scaled);
      }
    }
    if (const auto* ls = std::get_if<LinearSplit<F>>(&base)) {
      split = LinearSplit<E>{lift(ls->x), lift(ls->y), lift(ls->z)};
    } else if constexpr (field_traits<F>::has_extension) {
      if (!allow_extension_) {
        out.status = MembershipStatus::extension_required;
        out.detail = "split needs " + ext_.name();
        return out;
      }
      const Matrix<F>& h = form.hessian();
      Matrix<E> he(h.rows(), h.cols());
      for (Index i = 0; i < h.rows(); ++i)
        for (Index j = 0; j < h.cols(); ++j) he(i, j) = ext_.lift(h(i, j));
      const auto lifted = rank3_split(SymmetricForm<E>(he));
      if (const auto* le = std::get_if<LinearSplit<E>>(&lifted)) split = *le;
      extension = true;
    } else {
      out.status = MembershipStatus::extension_required;
      out.detail = "split needs a quadratic extension of " + ext_.name();
      return out;
    }
    if (!split) return failed(out, "no linear split over " + ext_.name());

    const unsigned d = model_.d();
    const E zero = ext_(0);
    auto pull = [&](const Vector<E>& lin) {
      MultiPoly<E> f(2);
      for (unsigned i = 0; i <= d; ++i)
        f.add_term(Exponents{std::uint16_t(d - i), std::uint16_t(i)}, lin(Index(i)));
      return f;
    };
    const MultiPoly<E> xt = pull(split->x), yt = pull(split->y), zt = pull(split->z);
    if (xt.is_zero() || yt.is_zero() || zt.is_zero()) return failed(out, "a split form pulls back to zero");
    const auto ox = odd_even_split(xt), oy = odd_even_split(yt);
    if (!(ox.odd == oy.odd)) return failed(out, "odd parts of x and y differ");
    const MultiPoly<E> sth = ox.half * oy.half * ox.odd;
    const auto lambda = divide_exact(zt, sth);
    if (!lambda || lambda->degree() != 0) return failed(out, "z is not a multiple of s t h");
    const E lam = lambda->leading_term().second;
    if (!(lam * lam == ox.unit * oy.unit)) return failed(out, "z^2 does not match x y");
    const E scalar = ox.unit * oy.unit / lift_scalar(rescale);
    const int ds = ox.half.degree(), dt = oy.half.degree();
    if (ds != dt || ds < 1) return failed(out, "s and t have unexpected degrees");

    MembershipWitness<F> w{unsigned(ds), ox.half, oy.half, ox.odd, scalar, extension};
    // Re-derive Q from the witness.
    const SigmaEntry e{w.ell, d - 2 * w.ell, w.ell, 0};
    const auto re = q_ab(model_, qs_ext_, e, binary_coefficients(w.s, w.ell, zero),
                         binary_coefficients(w.t, w.ell, zero), binary_coefficients(w.h, e.b_power, zero));
    for (Index i = 0; i < coords.size(); ++i)
      if (!(scalar * re.coords(i) == lift_scalar(coords(i)))) return failed(out, "witness does not reproduce Q");
    out.status = MembershipStatus::witnessed;
    out.witness = std::move(w);
    return out;
  }

  Vector<E> lift(const Vector<F>& v) const {
    Vector<E> out(v.size());
    for (Index i = 0; i < v.size(); ++i) out(i) = lift_scalar(v(i));
    return out;
  }
  E lift_scalar(const F& x) const { return field_traits<F>::lift(ext_, x); }

 private:
  static MembershipResult<F>& failed(MembershipResult<F>& r, std::string why) {
    r.status = MembershipStatus::reconstruction_failed;
    r.detail = std::move(why);
    return r;
  }

  const VeroneseModel& model_;
  const QuadricSpace<F>& qs_;
  EField ext_;
  QuadricSpace<E> qs_ext_;
  bool allow_extension_;
};

template <ExactField F>
MembershipResult<F> membership_p1(const VeroneseModel& model, const QuadricSpace<F>& qs, const Vector<F>& coords,
                                  bool allow_extension = true) {
  return P1Membership<F>(model, qs, allow_extension)(coords);
}

// ---------------------------------------------------------------------------
// Enumerating parameter points
// ---------------------------------------------------------------------------

/// Calls fn(row0, row1) for every point of the Grassmannian of lines in P^p over F_p,
/// each given by its reduced echelon 2 x (p+1) matrix.
template <class Fn>
void for_each_line(const PrimeField& k, unsigned p, Fn&& fn) {
  const unsigned len = p + 1;
  const std::uint64_t q = k.characteristic();
  for (unsigned c1 = 0; c1 < len; ++c1)
    for (unsigned c2 = c1 + 1; c2 < len; ++c2) {
      // free slots: row 0 at columns > c1 except c2, row 1 at columns > c2
      std::vector<std::pair<unsigned, unsigned>> slots;
      for (unsigned j = c1 + 1; j < len; ++j)
        if (j != c2) slots.emplace_back(0, j);
      for (unsigned j = c2 + 1; j < len; ++j) slots.emplace_back(1, j);
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < slots.size(); ++i) total *= q;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        Section<Fp> r0(len, k(0)), r1(len, k(0));
        r0[c1] = k(1);
        r1[c2] = k(1);
        std::uint64_t rest = idx;
        for (const auto& [row, col] : slots) {
          (row == 0 ? r0 : r1)[col] = k.element(rest % q);
          rest /= q;
        }
        fn(r0, r1);
      }
    }
}

/// Calls fn(point) for every canonical point of P^(coords-1)(F_p).
template <class Fn>
void for_each_projective_point(const PrimeField& k, std::size_t coords, Fn&& fn) {
  const std::uint64_t total = projective_count(k.characteristic(), coords);
  std::vector<std::uint32_t> raw(coords);
  for (std::uint64_t i = 0; i < total; ++i) {
    projective_point(k.characteristic(), coords, i, raw.data());
    Section<Fp> pt;
    for (auto r : raw) pt.push_back(k(r));
    fn(pt);
  }
}

/// Canonical projective representatives of all nonzero Q(s, t, h) with (<s,t>, [h]) over
/// F_p, for one entry.
std::set<std::vector<std::uint32_t>> forward_image(const VeroneseModel& model, const QuadricSpace<Fp>& qs,
                                                   const SigmaEntry& e, const PrimeField& k);

}  // namespace quadrank
