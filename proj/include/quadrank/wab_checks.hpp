#pragma once

// Checks built on Q(s, t, h): the decomposition of the rank-3 locus, the span of the
// rank-3 quadrics, uniqueness round trips, the Veronese-Grassmannian identification,
// and the randomized identity suite.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "quadrank/wab.hpp"

namespace quadrank {

std::string point_string(const std::vector<std::uint32_t>& raw);

// ---------------------------------------------------------------------------
// Decomposition of the rank-3 locus
// ---------------------------------------------------------------------------

struct DecompositionOptions {
  bool exhaustive = true;
  std::uint64_t samples = 10'000;        ///< rank-3 points to test when sampling
  std::uint64_t span_draws = 1'000'000;  ///< random span elements scanned for rank-3 hits
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool allow_extension = true;
  std::uint64_t budget = 100'000'000;
};

struct DecompositionReport {
  std::string instance, field, path;  ///< path: "membership" or "forward"
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::uint64_t scanned = 0;          ///< points of P^m inspected
  std::uint64_t rank3 = 0;            ///< rank-3 points tested
  std::uint64_t low_rank = 0;         ///< points of rank <= 2 met along the way
  std::uint64_t witnessed_base = 0;
  std::uint64_t witnessed_extension = 0;
  std::map<unsigned, std::uint64_t> by_ell;
  std::uint64_t from_span = 0, from_forward = 0, forward_rejected = 0;
  std::uint64_t forward_count = 0;    ///< distinct forward images (forward path)
  bool sets_equal = false;            ///< forward path
  std::vector<std::string> unresolved;

  bool ok() const { return unresolved.empty() && low_rank == 0 && (path != "forward" || sets_equal); }
};

/// On P^1 (p > d) every rank-3 point must carry a membership witness; for d = 2 on P^n
/// the rank-3 points must coincide with the forward images of the parameter space.
DecompositionReport decomposition_check(const VeroneseModel& model, const PrimeField& k,
                                        const DecompositionOptions& opt = {});

// ---------------------------------------------------------------------------
// Span of the rank-3 quadrics
// ---------------------------------------------------------------------------

struct SpanReport {
  std::size_t span = 0, target = 0;
  std::uint64_t draws = 0, seed = 0;
  bool full() const { return span == target; }
};

/// Grows the span of random Q(s, t, h) over all entries until it reaches m + 1 or stops
/// growing for `patience` consecutive draws.
SpanReport qr3_span_check(const VeroneseModel& model, const PrimeField& k, std::uint64_t seed,
                          std::uint64_t patience = 200);

// ---------------------------------------------------------------------------
// Uniqueness round trips on P^1
// ---------------------------------------------------------------------------

struct RoundtripReport {
  std::string instance;
  std::uint64_t trials = 0, passed = 0, rejected_draws = 0, seed = 0;
  std::uint64_t injectivity_pairs = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty() && passed == trials; }
};

/// Draws (s, t, h) with <s,t> 2-dimensional, gcd(s, t) = 1 and h squarefree and coprime to
/// s t; membership of Q(s, t, h) must recover ell, <s,t> and <h>. Consecutive draws must
/// also give distinct projective images.
RoundtripReport uniqueness_roundtrip(const VeroneseModel& model, const SigmaEntry& e, const PrimeField& k,
                                     std::uint64_t trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Quadratic Veronese and the Grassmannian
// ---------------------------------------------------------------------------

struct G2Report {
  unsigned n = 0;
  Index independent = 0;          ///< independent G_j over Q
  std::size_t kernel_dim = 0;     ///< dim I_2 from the kernel of the multiplication map
  std::uint64_t representation_count = 0;  ///< N^2 (N^2 - 1) / 12 with N = n + 1
  std::uint64_t displayed_product = 0;     ///< C(n+1, 2) C(n+2, 2), logged only
  std::size_t certified = 0;      ///< G_j with a verified Pluecker expression
  std::uint64_t phi3_count = 0, parameter_count = 0;  ///< over F_5, n = 2 only
  bool counted = false;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

G2Report veronese_g2_check(unsigned n);

// ---------------------------------------------------------------------------
// Randomized identities for Q(s, t, h)
// ---------------------------------------------------------------------------

struct IdentityTally {
  std::string identity;
  std::uint64_t instances = 0, failures = 0;
  std::vector<std::string> witnesses;  ///< first few failing draws
};

namespace detail {

template <ExactField F>
bool same(const QabResult<F>& a, const QabResult<F>& b) {
  return a.coords == b.coords;
}

template <ExactField F>
Vector<F> scaled(const Vector<F>& v, const F& c) {
  return v * c;
}

template <ExactField F>
Section<F> lin(const F& a, const Section<F>& s, const F& b, const Section<F>& t) {
  Section<F> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = a * s[i] + b * t[i];
  return out;
}

template <ExactField F>
Section<F> plus(const Section<F>& s, const Section<F>& t) {
  Section<F> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] + t[i];
  return out;
}

}  // namespace detail

/// Runs `instances` random draws of every identity, cycling through the entries of the
/// model. Coordinates are compared exactly.
template <class Field>
std::vector<IdentityTally> identity_suite(const VeroneseModel& model,
                                          const QuadricSpace<typename Field::element_type>& qs, const Field& k,
                                          std::uint64_t instances, std::uint64_t seed) {
  using F = typename Field::element_type;
  using Q = QabResult<F>;
  const auto entries = model.sigma_list();
  const F zero = k(0);
  std::vector<IdentityTally> tallies;
  auto record = [&](const std::string& name, bool ok, const std::string& where) {
    auto it = std::find_if(tallies.begin(), tallies.end(), [&](const auto& t) { return t.identity == name; });
    if (it == tallies.end()) it = tallies.insert(tallies.end(), IdentityTally{name, 0, 0, {}});
    ++it->instances;
    if (!ok) {
      ++it->failures;
      if (it->witnesses.size() < 5) it->witnesses.push_back(where);
    }
  };

  for (std::uint64_t i = 0; i < instances; ++i) {
    Rng rng(derive_seed(seed, i));
    const SigmaEntry& e = entries[i % entries.size()];
    auto sec = [&](unsigned deg) { return random_section(model, deg, k, rng); };
    auto q = [&](const Section<F>& s, const Section<F>& t, const Section<F>& h) { return q_ab(model, qs, e, s, t, h); };
    const std::string where = model.name() + " ell=" + std::to_string(e.ell) + " draw " + std::to_string(i);
    const Section<F> s = sec(e.ell), t = sec(e.ell), u = sec(e.ell), h = sec(e.b_power), g = sec(e.b_power);
    const F a = k.random(rng), b = k.random(rng), c = k.random(rng);
    const Q base = q(s, t, h);

    record("symmetry", detail::same(q(t, s, h), base), where);

    {
      Section<F> as(s), bt(t), ch(h);
      for (auto& x : as) x *= a;
      for (auto& x : bt) x *= b;
      for (auto& x : ch) x *= c;
      const F f = a * a * b * b * c * c;
      record("scaling", q(as, bt, ch).coords == detail::scaled(base.coords, f), where);
    }

    {
      // every fourth draw uses a singular matrix (c, d) = lambda (a, b)
      F d = k.random(rng), cc = c;
      if (i % 4 == 3) {
        const F lambda = k.random(rng);
        cc = lambda * a;
        d = lambda * b;
      }
      const F det = a * d - b * cc;
      const Q lhs = q(detail::lin(a, s, b, t), detail::lin(cc, s, d, t), h);
      bool ok = lhs.coords == detail::scaled(base.coords, det * det);
      if (det.is_zero()) ok = ok && lhs.is_zero();
      record("determinant", ok, where);
    }

    {
      // Q = 0 exactly when <s,t> has dimension <= 1 or h = 0
      Section<F> ss = s, tt = t, hh = h;
      switch (i % 3) {
        case 0: tt = detail::lin(k.random(rng), s, zero, s); break;
        case 1: hh.assign(h.size(), zero); break;
        default: break;
      }
      const Q r = q(ss, tt, hh);
      const bool degenerate = span_rank<F>({ss, tt}) <= 1 || is_zero_section(hh);
      record("vanishing", r.is_zero() == degenerate, where);
    }

    {
      const F ab = a * b;
      const Vector<F> rhs = detail::scaled(base.coords, a * a - ab) +
                            detail::scaled(q(s, u, h).coords, b * b - ab) +
                            detail::scaled(q(s, detail::plus(t, u), h).coords, ab);
      record("polarization-t", q(s, detail::lin(a, t, b, u), h).coords == rhs, where);
      const Vector<F> rhs_h = detail::scaled(q(s, t, g).coords, a * a - ab) +
                              detail::scaled(base.coords, b * b - ab) +
                              detail::scaled(q(s, t, detail::plus(g, h)).coords, ab);
      record("polarization-h", q(s, t, detail::lin(a, g, b, h)).coords == rhs_h, where);
    }

    for (unsigned terms : {3U, 4U}) {
      // Q(s, t1 + ... + tl, h) = sum_{i<j} Q(s, ti + tj, h) - (l - 2) sum_i Q(s, ti, h)
      for (int slot = 0; slot < 2; ++slot) {
        const unsigned deg = slot == 0 ? e.ell : e.b_power;
        std::vector<Section<F>> parts;
        for (unsigned j = 0; j < terms; ++j) parts.push_back(sec(deg));
        auto eval = [&](const Section<F>& x) { return slot == 0 ? q(s, x, h).coords : q(s, t, x).coords; };
        Section<F> total = parts[0];
        for (unsigned j = 1; j < terms; ++j) total = detail::plus(total, parts[j]);
        Vector<F> rhs = Vector<F>::Constant(base.coords.size(), zero);
        for (unsigned a1 = 0; a1 < terms; ++a1)
          for (unsigned a2 = a1 + 1; a2 < terms; ++a2) rhs += eval(detail::plus(parts[a1], parts[a2]));
        const F weight = k(std::int64_t(terms) - 2);
        for (unsigned j = 0; j < terms; ++j) rhs -= detail::scaled(eval(parts[j]), weight);
        record(std::string("expansion-") + (slot == 0 ? "t" : "h") + "-" + std::to_string(terms),
               eval(total) == rhs, where);
      }
    }

    {
      const Index r = form_rank(qs.form(base.coords));
      const Index forms = span_rank<F>({std::vector<F>(base.forms[0].data(), base.forms[0].data() + base.forms[0].size()),
                                        std::vector<F>(base.forms[1].data(), base.forms[1].data() + base.forms[1].size()),
                                        std::vector<F>(base.forms[2].data(), base.forms[2].data() + base.forms[2].size())});
      record("rank-at-most-3", r <= 3 && (forms < 3 || r == 3), where);
    }
  }
  return tallies;
}

/// Over a tiny field, every (s, t, h) for (P^1, O(2)): Q = 0 exactly when s, t are
/// dependent or h = 0.
IdentityTally vanishing_exhaustive_p1_2(const PrimeField& k);

}  // namespace quadrank
