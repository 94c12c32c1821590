#include "quadrank/golden.hpp"

#include <chrono>
#include <cmath>

#include "quadrank/wab_checks.hpp"

namespace quadrank {

namespace {

Finding start(const std::string& slug, const std::string& instance) {
  Finding f;
  f.check = slug;
  f.instance = instance;
  return f;
}

void require(Finding& f, bool ok, const std::string& what) {
  if (ok) return;
  f.witnesses.push_back(what);
  if (!f.failed()) f.fail(what);
}

Finding fixture_matrix(const GoldenOptions&) {
  Finding f = start("fixture-matrix", "elliptic quintic fixture over Q");
  const RationalField q;
  const auto r = fixture_matrix_check(fixture_elliptic_quintic(q), q);
  f.details = {{"entries", 25}, {"mismatches", r.diffs.size()}};
  for (const auto& d : r.diffs)
    require(f, false, "M[" + std::to_string(d.row + 1) + "][" + std::to_string(d.col + 1) + "]: expected " +
                          d.expected + ", got " + d.actual);
  f.summary = std::to_string(25 - r.diffs.size()) + " of 25 entries match";
  return f;
}

Finding phi2_empty(const GoldenOptions& opt) {
  Finding f = start("phi2-empty", "P1/O(4) over F_7, P2/O(2) over F_5, fixture over F_7");
  struct Case {
    std::string name;
    SymLinearMatrix<Fp> m;
    PrimeField k;
    std::uint64_t expected_points;
  };
  const PrimeField f7(7), f5(5);
  std::vector<Case> cases;
  cases.push_back({"P1/O(4) over F_7", assemble_m(quad_ideal_basis(VeroneseModel(1, 4), f7)), f7, 19'608});
  cases.push_back({"P2/O(2) over F_5", assemble_m(quad_ideal_basis(VeroneseModel(2, 2), f5)), f5, 3'906});
  cases.push_back({"fixture over F_7", assemble_m(fixture_elliptic_quintic(f7)), f7, 2'801});
  ScanOptions o;
  o.threads = opt.threads;
  for (const auto& c : cases) {
    const auto rep = enumerate_phi(c.m, c.k, 2, o);
    f.details[c.name] = {{"scanned", rep.scanned}, {"rank_at_most_2", rep.at_most(2)}};
    require(f, rep.scanned == c.expected_points, c.name + ": scanned " + std::to_string(rep.scanned));
    require(f, rep.at_most(2) == 0, c.name + ": " + std::to_string(rep.at_most(2)) + " points of rank <= 2");
  }
  f.summary = "no rank <= 2 points in 3 exhaustive scans";
  return f;
}

Finding flagship_decomposition(const GoldenOptions& opt) {
  Finding f = start("flagship-decomposition", "P2/O(2) over F_5");
  DecompositionOptions o;
  o.threads = opt.threads;
  const auto rep = decomposition_check(VeroneseModel(2, 2), PrimeField(5), o);
  f.details = {{"rank3_points", rep.rank3}, {"forward_images", rep.forward_count}, {"sets_equal", rep.sets_equal}};
  require(f, rep.rank3 == 31, "rank-3 count " + std::to_string(rep.rank3));
  require(f, rep.forward_count == 31, "forward image count " + std::to_string(rep.forward_count));
  require(f, rep.sets_equal, "rank-3 points and forward images differ as sets");
  for (const auto& u : rep.unresolved) require(f, false, u);
  f.summary = std::to_string(rep.rank3) + " rank-3 points equal " + std::to_string(rep.forward_count) + " forward images";
  return f;
}

Finding p1_decomposition(const GoldenOptions& opt) {
  Finding f = start("p1-decomposition", "P1/O(4) and P1/O(5) over F_7");
  const PrimeField k(7);
  DecompositionOptions o;
  o.threads = opt.threads;
  o.seed = opt.seed;
  const auto full = decomposition_check(VeroneseModel(1, 4), k, o);
  o.exhaustive = false;
  o.samples = 10'000;
  const auto sampled = decomposition_check(VeroneseModel(1, 5), k, o);
  for (const auto* rep : {&full, &sampled}) {
    Json ells = Json::object();
    for (const auto& [ell, n] : rep->by_ell) ells[std::to_string(ell)] = n;
    f.details[rep->instance] = {{"rank3_points", rep->rank3},
                                {"witnessed_base_field", rep->witnessed_base},
                                {"witnessed_extension", rep->witnessed_extension},
                                {"witnesses_by_ell", ells},
                                {"unresolved", rep->unresolved.size()}};
    for (const auto& u : rep->unresolved) require(f, false, rep->instance + " " + u);
    require(f, rep->low_rank == 0, rep->instance + ": points of rank <= 2");
    for (const auto& [ell, n] : rep->by_ell) require(f, ell == 1 || ell == 2, "witness with ell = " + std::to_string(ell));
  }
  f.details["P1/O(5)"]["from_span"] = sampled.from_span;
  f.details["P1/O(5)"]["from_forward_images"] = sampled.from_forward;
  require(f, sampled.rank3 == 10'000, "sampled " + std::to_string(sampled.rank3) + " rank-3 points");
  require(f, full.rank3 > 0, "no rank-3 points found on P1/O(4)");
  f.summary = std::to_string(full.rank3) + " exhaustive and " + std::to_string(sampled.rank3) +
              " sampled rank-3 points witnessed";
  return f;
}

Finding identities(const GoldenOptions& opt) {
  Finding f = start("identity-suite", "P1/O(4), P1/O(5), P2/O(2), P2/O(3) over F_11 and Q");
  std::uint64_t checked = 0;
  auto absorb = [&](const std::string& where, const std::vector<IdentityTally>& tallies) {
    for (const auto& t : tallies) {
      checked += t.instances;
      f.details[where][t.identity] = t.instances;
      for (const auto& w : t.witnesses) require(f, false, where + " " + t.identity + ": " + w);
      require(f, t.failures == 0, where + " " + t.identity + ": " + std::to_string(t.failures) + " failures");
    }
  };
  const PrimeField k(11);
  const RationalField q;
  for (const auto& [n, d] : std::vector<std::pair<unsigned, unsigned>>{{1, 4}, {1, 5}, {2, 2}, {2, 3}}) {
    const VeroneseModel model(n, d);
    absorb(model.name() + " over F_11", identity_suite(model, quad_ideal_basis(model, k), k, 1000, opt.seed));
    absorb(model.name() + " over Q", identity_suite(model, quad_ideal_basis(model, q), q, 100, opt.seed));
  }
  absorb("P1/O(2) over F_3", {vanishing_exhaustive_p1_2(PrimeField(3))});
  f.summary = std::to_string(checked) + " identity instances, all exact";
  return f;
}

struct WabInstance {
  unsigned n, d, ell;
};

const std::vector<WabInstance>& wab_instances() {
  static const std::vector<WabInstance> v = {{1, 2, 1}, {1, 4, 1}, {1, 4, 2}, {1, 5, 1}, {2, 2, 1}, {2, 3, 1}, {3, 2, 1}};
  return v;
}

std::string instance_name(const WabInstance& w) {
  return VeroneseModel(w.n, w.d).name() + " ell=" + std::to_string(w.ell);
}

Finding coefficient_structure(const GoldenOptions& opt) {
  Finding f = start("coefficient-structure", "seven (model, ell) instances over F_11");
  const PrimeField k(11);
  for (const auto& w : wab_instances()) {
    const VeroneseModel model(w.n, w.d);
    const std::string name = instance_name(w);
    auto sys = coefficient_polys(model, quad_ideal_basis(model, k), model.sigma_list().at(w.ell - 1));
    const auto md = sys.max_multidegree();
    require(f, md[0] <= 2 && md[1] <= 2 && md[2] <= 2, name + ": multidegree exceeds (2,2,2)");
    try {
      const auto cert = plucker_certify(sys, k(1));
      f.details[name] = {{"coefficient_polys", sys.g.size()}, {"certified", cert.expressions.size()},
                         {"max_multidegree", md}};
    } catch (const TheoremViolation& e) {
      require(f, false, name + ": " + e.what());
    }
    const auto bpf = basepoint_free_check(sys, k, 500, opt.seed);
    for (const auto& x : bpf.witnesses) require(f, false, name + ": " + x);
    const auto dv = degenerate_vanishing_check(sys, k, 50, opt.seed);
    for (const auto& x : dv.witnesses) require(f, false, name + ": " + x);
  }
  f.summary = "all coefficient polynomials certified, base point free at 500 trials";
  return f;
}

Finding dimension(const GoldenOptions& opt) {
  Finding f = start("image-dimension", "seven (model, ell) instances over F_101");
  const PrimeField k(101);
  for (const auto& w : wab_instances()) {
    const VeroneseModel model(w.n, w.d);
    const auto e = model.sigma_list().at(w.ell - 1);
    const auto r = image_dim(coefficient_polys(model, quad_ideal_basis(model, k), e), k, opt.seed);
    f.details[instance_name(w)] = {{"dimension", r.dimension}, {"expected", r.expected}, {"jacobian_ranks", r.ranks}};
    require(f, r.dimension == r.expected,
            instance_name(w) + ": dimension " + std::to_string(r.dimension) + ", expected " + std::to_string(r.expected));
  }
  f.summary = "every image has dimension 2p + q - 2";
  return f;
}

Finding degree(const GoldenOptions&) {
  Finding f = start("degree-formula", "1 <= p <= 6, 0 <= q <= 6");
  for (unsigned p = 1; p <= 6; ++p)
    for (unsigned q = 0; q <= 6; ++q) {
      try {
        f.details[std::to_string(p) + "," + std::to_string(q)] = degree_formula(p, q).get_str();
      } catch (const TheoremViolation& e) {
        require(f, false, e.what());
      }
    }
  require(f, degree_formula(1, 0) == 1, "degree(1,0) != 1");
  require(f, degree_formula(2, 0) == 4, "degree(2,0) != 4");
  f.summary = "closed form equals the product form on 42 pairs";
  return f;
}

Finding qr3(const GoldenOptions& opt) {
  Finding f = start("qr3-span", "P1/O(4), P1/O(5), P2/O(2), P2/O(3), P3/O(2) over F_7");
  const PrimeField k(7);
  for (const auto& [n, d] : std::vector<std::pair<unsigned, unsigned>>{{1, 4}, {1, 5}, {2, 2}, {2, 3}, {3, 2}}) {
    const VeroneseModel model(n, d);
    const auto r = qr3_span_check(model, k, opt.seed);
    f.details[model.name()] = {{"span", r.span}, {"target", r.target}, {"draws", r.draws}};
    require(f, r.full(), model.name() + ": span " + std::to_string(r.span) + " of " + std::to_string(r.target));
  }
  f.summary = "rank-3 quadrics span I_2 in all five models";
  return f;
}

Finding roundtrips(const GoldenOptions& opt) {
  Finding f = start("uniqueness-roundtrip", "P1/O(4) ell=1, P1/O(5) ell=1, P1/O(5) ell=2 over F_11");
  const PrimeField k(11);
  for (const auto& [d, ell] : std::vector<std::pair<unsigned, unsigned>>{{4, 1}, {5, 1}, {5, 2}}) {
    const VeroneseModel model(1, d);
    const auto r = uniqueness_roundtrip(model, model.sigma_list().at(ell - 1), k, 200, opt.seed);
    f.details[r.instance] = {{"trials", r.trials}, {"passed", r.passed}, {"distinct_image_pairs", r.injectivity_pairs}};
    for (const auto& x : r.failures) require(f, false, r.instance + " " + x);
    require(f, r.ok(), r.instance + ": " + std::to_string(r.passed) + " of " + std::to_string(r.trials));
  }
  f.summary = "600 round trips recover <s,t> and <h>";
  return f;
}

Finding fixture_counts(const GoldenOptions& opt) {
  Finding f = start("fixture-point-counts", "elliptic quintic fixture over F_7, F_11, F_13");
  unsigned inside = 0;
  for (std::uint32_t p : {7U, 11U, 13U}) {
    const PrimeField k(p);
    const auto qs = fixture_elliptic_quintic(k);
    ScanOptions o;
    o.threads = opt.threads;
    const auto rep = enumerate_phi(assemble_m(qs), k, 3, o);
    const std::uint64_t n = rep.at_most(3);
    const double r = 2 * std::sqrt(double(p));
    const bool in = n >= p + 1 - r && n <= p + 1 + r;
    inside += in;
    std::uint64_t off = 0;
    const auto pts = CurveSampler(k).sample(200, opt.seed);
    for (const auto& pt : pts) {
      const std::vector<Fp> z(pt.data(), pt.data() + pt.size());
      for (std::size_t j = 0; j < qs.dimension(); ++j)
        if (!qs.poly(j).eval(z).is_zero()) {
          ++off;
          break;
        }
    }
    f.details[k.name()] = {{"rank_at_most_3", n}, {"hasse_low", p + 1 - r}, {"hasse_high", p + 1 + r},
                           {"inside", in},       {"curve_points", pts.size()}, {"off_curve", off}};
    require(f, off == 0, k.name() + ": " + std::to_string(off) + " sampled points off the curve");
    require(f, !pts.empty(), k.name() + ": no curve points sampled");
  }
  require(f, inside >= 2, std::to_string(inside) + " of 3 counts inside the Hasse window");
  f.summary = std::to_string(inside) + " of 3 counts inside the Hasse window; sampled points on the curve";
  return f;
}

Finding veronese_g2(const GoldenOptions&) {
  Finding f = start("veronese-grassmannian", "P2/O(2) and P3/O(2)");
  for (unsigned n : {2U, 3U}) {
    const auto r = veronese_g2_check(n);
    const std::size_t frozen = n == 2 ? 6 : 20;
    f.details["n=" + std::to_string(n)] = {{"independent", r.independent},
                                          {"kernel_dimension", r.kernel_dim},
                                          {"displayed_binomial_product", r.displayed_product},
                                          {"displayed_product_matches", r.displayed_product == r.kernel_dim}};
    for (const auto& x : r.failures) require(f, false, "n=" + std::to_string(n) + ": " + x);
    require(f, std::size_t(r.independent) == frozen && r.kernel_dim == frozen,
            "n=" + std::to_string(n) + ": expected " + std::to_string(frozen));
  }
  f.summary = "independent coefficient polynomials: 6 and 20, equal to dim I_2";
  return f;
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> list = {
      {1, "fixture-matrix", "fixture matrix reproduced entry for entry", fixture_matrix},
      {2, "phi2-empty", "no rank <= 2 points in three exhaustive scans", phi2_empty},
      {3, "flagship-decomposition", "rank-3 points of P2/O(2) over F_5 equal the forward images", flagship_decomposition},
      {4, "p1-decomposition", "every rank-3 point on P1/O(4), P1/O(5) over F_7 is witnessed", p1_decomposition},
      {5, "identity-suite", "randomized identities hold exactly", identities},
      {6, "coefficient-structure", "Pluecker certificates, multidegree, base point freeness", coefficient_structure},
      {7, "image-dimension", "Jacobian rank gives dim W = 2p + q - 2", dimension},
      {8, "degree-formula", "closed degree form equals the product form", degree},
      {9, "qr3-span", "rank-3 quadrics span I_2", qr3},
      {10, "uniqueness-roundtrip", "membership recovers <s,t> and <h>", roundtrips},
      {11, "fixture-point-counts", "fixture counts in the Hasse window, sampled points on the curve", fixture_counts},
      {12, "veronese-grassmannian", "independent coefficient polynomials equal dim I_2", veronese_g2},
  };
  return list;
}

Finding fixture_negative_control() {
  Finding f = start("negative-control", "fixture with a corrupted fourth quadric over Q");
  std::vector<std::string> quadrics(std::begin(kEllipticQuinticQuadrics), std::end(kEllipticQuinticQuadrics));
  quadrics[3] = "z0^2 + z0*z2 + z0*z4 + z2^2 + 2*z3*z4";
  const RationalField q;
  const auto r = fixture_matrix_check(quadric_space_from_text(quadrics, 5, q), q);
  for (const auto& d : r.diffs)
    f.witnesses.push_back("M[" + std::to_string(d.row + 1) + "][" + std::to_string(d.col + 1) + "]: expected " +
                          d.expected + ", got " + d.actual);
  f.details = {{"mismatches", r.diffs.size()}};
  if (r.match) f.fail("the corrupted fixture still matches");
  f.summary = "corruption detected with " + std::to_string(r.diffs.size()) + " differing entries";
  return f;
}

RunReport golden_suite(const GoldenOptions& opt) {
  RunReport rep;
  auto timed = [&](const std::string& name, auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Finding f;
    try {
      f = fn();
    } catch (const std::exception& e) {
      f = start(name, "");
      f.fail(std::string("error: ") + e.what());
    }
    rep.timings.emplace_back(name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    rep.findings.push_back(std::move(f));
  };
  for (const auto& c : acceptance_criteria()) timed(c.slug, [&] { return c.run(opt); });
  timed("negative-control", [] { return fixture_negative_control(); });
  return rep;
}

}  // namespace quadrank
