#include "quadrank/report.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "quadrank/wab_checks.hpp"

namespace quadrank {

std::string version() { return QUADRANK_VERSION; }

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

VarietySpec VarietySpec::parse(const std::string& name, unsigned n, unsigned d) {
  if (name == "pn") return {Kind::veronese, n, d};
  if (name == "elliptic5-fixture") return {Kind::elliptic_fixture, 0, 0};
  throw std::invalid_argument("unknown variety '" + name + "' (expected pn or elliptic5-fixture)");
}

std::string VarietySpec::name() const { return kind == Kind::veronese ? "pn" : "elliptic5-fixture"; }

std::string VarietySpec::label() const {
  return kind == Kind::veronese ? VeroneseModel(n, d).name() : "elliptic quintic fixture";
}

std::vector<std::string> available_checks(const VarietySpec& v) {
  if (v.kind == VarietySpec::Kind::elliptic_fixture) return {"matrix", "phi2", "phi3count", "curve"};
  return {"ideal", "phi2", "phi3count", "decompose", "qr3", "certify", "bpf",
          "dim", "degree", "roundtrip", "identities", "g2"};
}

void RunConfig::validate() const {
  if (rational == (p != 0)) throw std::invalid_argument("choose exactly one field: --p P or --rational");
  if (p != 0) PrimeField{p};
  if (variety.kind == VarietySpec::Kind::veronese) VeroneseModel(variety.n, variety.d);
  if (scan_budget == 0 || symbolic_budget == 0) throw std::invalid_argument("budgets must be positive");
  const auto known = available_checks(variety);
  for (const auto& c : checks)
    if (std::find(known.begin(), known.end(), c) == known.end())
      throw std::invalid_argument("unknown check '" + c + "' for variety " + variety.name());
}

std::string RunConfig::field_name() const { return rational ? "Q" : "F_" + std::to_string(p); }

Json RunConfig::to_json() const {
  Json j;
  j["variety"] = variety.name();
  if (variety.kind == VarietySpec::Kind::veronese) {
    j["n"] = variety.n;
    j["d"] = variety.d;
  }
  j["field"] = field_name();
  j["allow_extension"] = allow_extension;
  j["checks"] = checks;
  j["seed"] = seed;
  j["exhaustive"] = exhaustive;
  j["samples"] = samples;
  j["scan_budget"] = scan_budget;
  j["symbolic_budget"] = symbolic_budget;
  if (ell) j["ell"] = *ell;
  return j;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

Json Finding::to_json() const {
  Json j;
  j["check"] = check;
  j["instance"] = instance;
  j["status"] = status;
  if (!reason.empty()) j["reason"] = reason;
  if (!summary.empty()) j["summary"] = summary;
  j["witnesses"] = witnesses;
  if (!details.empty()) j["details"] = details;
  return j;
}

bool RunReport::failed() const {
  return std::any_of(findings.begin(), findings.end(), [](const Finding& f) { return f.failed(); });
}

Json RunReport::to_json() const {
  Json j;
  j["schema"] = 1;
  j["version"] = version();
  if (config) j["config"] = config->to_json();
  j["findings"] = Json::array();
  for (const auto& f : findings) j["findings"].push_back(f.to_json());
  std::size_t pass = 0, fail = 0, skipped = 0;
  for (const auto& f : findings) (f.status == "pass" ? pass : f.status == "fail" ? fail : skipped)++;
  j["totals"] = {{"pass", pass}, {"fail", fail}, {"skipped", skipped}};
  if (show_timings) {
    Json t = Json::object();
    for (const auto& [name, secs] : timings) t[name] = std::round(secs * 1000.0) / 1000.0;
    j["timings_seconds"] = t;
  }
  return j;
}

std::string RunReport::to_text() const {
  std::ostringstream out;
  out << "quadrank " << version();
  if (config) out << "  " << config->variety.label() << " over " << config->field_name() << "  seed " << config->seed;
  out << "\n";
  std::size_t wc = 5, wi = 8;
  for (const auto& f : findings) {
    wc = std::max(wc, f.check.size());
    wi = std::max(wi, f.instance.size());
  }
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); };
  out << pad("check", wc) << "  " << pad("instance", wi) << "  " << pad("status", 7) << "  summary\n";
  for (std::size_t i = 0; i < findings.size(); ++i) {
    const auto& f = findings[i];
    std::string line = f.summary;
    if (!f.reason.empty()) line = line.empty() ? f.reason : line + " (" + f.reason + ")";
    if (show_timings && i < timings.size()) line += "  [" + std::to_string(timings[i].second).substr(0, 6) + " s]";
    out << pad(f.check, wc) << "  " << pad(f.instance, wi) << "  " << pad(f.status, 7) << "  " << line << "\n";
    for (std::size_t w = 0; w < f.witnesses.size() && w < 10; ++w) out << "    " << f.witnesses[w] << "\n";
    if (f.witnesses.size() > 10) out << "    ... " << f.witnesses.size() - 10 << " more\n";
  }
  std::size_t fail = 0;
  for (const auto& f : findings) fail += f.failed();
  out << (fail ? std::to_string(fail) + " failing finding(s)\n" : "all findings pass or are skipped\n");
  return out.str();
}

// ---------------------------------------------------------------------------
// Individual checks
// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kMaxWitnesses = 50;
constexpr std::uint64_t kBasepointTrials = 500;
constexpr std::uint64_t kSpotTrials = 50;
constexpr std::uint64_t kRoundtripTrials = 200;
constexpr std::uint64_t kCurveSamples = 200;

void add_witnesses(Finding& f, const std::vector<std::string>& w) {
  for (std::size_t i = 0; i < w.size() && f.witnesses.size() < kMaxWitnesses; ++i) f.witnesses.push_back(w[i]);
}

Json counts_json(const std::map<unsigned, std::uint64_t>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

std::string counts_text(const std::map<unsigned, std::uint64_t>& m) {
  std::string s;
  for (const auto& [k, v] : m) s += (s.empty() ? "" : ", ") + std::string("rank ") + std::to_string(k) + ": " + std::to_string(v);
  return s;
}

struct Context {
  const RunConfig& cfg;
  std::string instance;
  std::optional<VeroneseModel> model;

  std::vector<SigmaEntry> entries() const {
    std::vector<SigmaEntry> out;
    for (const auto& e : model->sigma_list())
      if (!cfg.ell || *cfg.ell == e.ell) out.push_back(e);
    return out;
  }
  ScanOptions scan() const {
    ScanOptions o;
    o.exhaustive = cfg.exhaustive;
    o.samples = cfg.samples;
    o.seed = cfg.seed;
    o.threads = cfg.threads;
    o.budget = cfg.scan_budget;
    return o;
  }
};

/// Calls fn with the configured field descriptor.
template <class Fn>
void with_field(const RunConfig& cfg, Fn&& fn) {
  if (cfg.rational) fn(RationalField{});
  else fn(PrimeField(cfg.p));
}

template <class Field>
auto space_for(const Context& c, const Field& k) {
  return c.model ? quad_ideal_basis(*c.model, k) : fixture_elliptic_quintic(k);
}

std::optional<PrimeField> prime_field(const Context& c, Finding& f) {
  if (c.cfg.rational) {
    f.skip("needs a prime field");
    return std::nullopt;
  }
  return PrimeField(c.cfg.p);
}

Json entry_json(const SigmaEntry& e) { return {{"ell", e.ell}, {"b_power", e.b_power}, {"p", e.p}, {"q", e.q}}; }

void check_ideal(const Context& c, Finding& f) {
  with_field(c.cfg, [&](const auto& k) {
    const auto qs = space_for(c, k);
    const std::size_t expected = sym2_size(c.model->sections()) - c.model->h0(2 * c.model->d());
    f.details = {{"sections", c.model->sections()}, {"dimension", qs.dimension()}, {"expected", expected}};
    f.summary = "dim I_2 = " + std::to_string(qs.dimension());
    if (qs.dimension() != expected) f.fail("dimension differs from C(r+2,2) - h0(2d) = " + std::to_string(expected));
  });
}

void check_phi2(const Context& c, Finding& f) {
  const auto k = prime_field(c, f);
  if (!k) return;
  ScanOptions o = c.scan();
  o.exhaustive = true;
  const auto rep = enumerate_phi(assemble_m(space_for(c, *k)), *k, 2, o);
  const std::uint64_t low = rep.at_most(2);
  f.details = {{"scanned", rep.scanned}, {"total", rep.total}, {"rank_at_most_2", low}};
  f.summary = std::to_string(low) + " points of rank <= 2 among " + std::to_string(rep.scanned);
  for (const auto& pt : rep.points)
    if (f.witnesses.size() < kMaxWitnesses) f.witnesses.push_back(point_string(pt.coords) + " rank " + std::to_string(pt.rank));
  if (low) f.fail("the rank <= 2 locus is not empty");
}

void check_phi3count(const Context& c, Finding& f) {
  const auto k = prime_field(c, f);
  if (!k) return;
  const auto rep = enumerate_phi(assemble_m(space_for(c, *k)), *k, 3, c.scan());
  const std::uint64_t rank3 = rep.at_most(3);
  f.details = {{"exhaustive", rep.exhaustive}, {"scanned", rep.scanned}, {"total", rep.total},
               {"rank_counts", counts_json(rep.rank_counts)}, {"rank_at_most_3", rank3}};
  if (!rep.exhaustive) {
    f.details["seed"] = rep.seed;
    f.details["chunks"] = rep.chunks;
    f.details["chunk_seed_rule"] = "derive_seed(seed, chunk)";
  }
  f.summary = std::to_string(rank3) + " points of rank <= 3; " + counts_text(rep.rank_counts);
  if (!c.model && rep.exhaustive) {
    const double p = k->characteristic(), r = 2 * std::sqrt(p);
    const bool inside = rank3 >= p + 1 - r && rank3 <= p + 1 + r;
    f.details["hasse_window"] = {{"low", p + 1 - r}, {"high", p + 1 + r}, {"inside", inside}};
    f.summary += inside ? "; inside the Hasse window" : "; outside the Hasse window";
  }
}

void check_decompose(const Context& c, Finding& f) {
  const auto k = prime_field(c, f);
  if (!k) return;
  DecompositionOptions o;
  o.exhaustive = c.cfg.exhaustive;
  o.samples = c.cfg.samples;
  o.seed = c.cfg.seed;
  o.threads = c.cfg.threads;
  o.allow_extension = c.cfg.allow_extension;
  o.budget = c.cfg.scan_budget;
  const auto rep = decomposition_check(*c.model, *k, o);
  f.details = {{"path", rep.path},
               {"exhaustive", rep.exhaustive},
               {"scanned", rep.scanned},
               {"rank3_points", rep.rank3},
               {"rank_at_most_2", rep.low_rank},
               {"witnessed_base_field", rep.witnessed_base},
               {"witnessed_extension", rep.witnessed_extension},
               {"witnesses_by_ell", counts_json(rep.by_ell)},
               {"unresolved", rep.unresolved.size()}};
  if (rep.path == "forward") {
    f.details["forward_images"] = rep.forward_count;
    f.details["sets_equal"] = rep.sets_equal;
  }
  if (!rep.exhaustive) {
    f.details["seed"] = rep.seed;
    f.details["span_stream_seed"] = derive_seed(rep.seed, 1);
    f.details["forward_stream_seed"] = derive_seed(rep.seed, 2);
    f.details["from_span"] = rep.from_span;
    f.details["from_forward_images"] = rep.from_forward;
    f.details["forward_rejected"] = rep.forward_rejected;
  }
  f.summary = std::to_string(rep.rank3) + " rank-3 points, " + std::to_string(rep.unresolved.size()) + " unresolved";
  add_witnesses(f, rep.unresolved);
  if (!rep.ok()) f.fail("rank-3 points without a decomposition witness");
}

void check_qr3(const Context& c, Finding& f) {
  const auto k = prime_field(c, f);
  if (!k) return;
  const auto rep = qr3_span_check(*c.model, *k, c.cfg.seed);
  f.details = {{"span", rep.span}, {"target", rep.target}, {"draws", rep.draws}, {"seed", rep.seed},
               {"stream_seed", derive_seed(rep.seed, 0x53)}};
  f.summary = "span " + std::to_string(rep.span) + " of " + std::to_string(rep.target);
  if (!rep.full()) f.fail("rank-3 quadrics do not span I_2");
}

template <class Field>
WabSystem<typename Field::element_type> system_for(const Context& c, const Field& k, const SigmaEntry& e) {
  return coefficient_polys(*c.model, quad_ideal_basis(*c.model, k), e, c.cfg.symbolic_budget);
}

void check_certify(const Context& c, Finding& f) {
  with_field(c.cfg, [&](const auto& k) {
    f.details = Json::array();
    std::vector<std::string> bad;
    for (const auto& e : c.entries()) {
      auto sys = system_for(c, k, e);
      const auto md = sys.max_multidegree();
      Json j = entry_json(e);
      j["coefficient_polys"] = sys.g.size();
      j["max_multidegree"] = md;
      const std::string tag = "ell=" + std::to_string(e.ell) + ": ";
      if (md[0] > 2 || md[1] > 2 || md[2] > 2) bad.push_back(tag + "multidegree exceeds (2,2,2)");
      try {
        const auto cert = plucker_certify(sys, k(1));
        std::size_t terms = 0;
        for (const auto& ex : cert.expressions) terms += ex.size();
        j["plucker_products"] = cert.basis_size;
        j["plucker_products_rank"] = cert.basis_rank;
        j["certificate_terms"] = terms;
      } catch (const TheoremViolation& err) {
        bad.push_back(tag + err.what());
      }
      const auto sl2 = sl2_invariance_check(sys, k, kSpotTrials, c.cfg.seed);
      const auto dv = degenerate_vanishing_check(sys, k, kSpotTrials, c.cfg.seed);
      j["sl2_invariant"] = sl2.ok;
      j["degenerate_points_vanish"] = dv.ok;
      for (const auto& w : sl2.witnesses) bad.push_back(tag + w);
      for (const auto& w : dv.witnesses) bad.push_back(tag + w);
      f.details.push_back(j);
    }
    f.summary = std::to_string(f.details.size()) + (f.details.size() == 1 ? " entry certified" : " entries certified");
    add_witnesses(f, bad);
    if (!bad.empty()) f.fail("coefficient polynomials fail certification");
  });
}

void check_bpf(const Context& c, Finding& f) {
  with_field(c.cfg, [&](const auto& k) {
    f.details = Json::array();
    std::vector<std::string> bad;
    for (const auto& e : c.entries()) {
      const auto sys = system_for(c, k, e);
      const auto r = basepoint_free_check(sys, k, kBasepointTrials, c.cfg.seed);
      Json j = entry_json(e);
      j["trials"] = r.trials;
      j["seed"] = r.seed;
      j["base_point_free"] = r.ok;
      f.details.push_back(j);
      for (const auto& w : r.witnesses) bad.push_back("ell=" + std::to_string(e.ell) + ": " + w);
    }
    f.summary = std::to_string(kBasepointTrials) + " trials per entry";
    add_witnesses(f, bad);
    if (!bad.empty()) f.fail("all coefficient polynomials vanish at a parameter point");
  });
}

void check_dim(const Context& c, Finding& f) {
  // Small primes can drop the Jacobian rank by accident; fall back to Q there.
  const bool use_prime = !c.cfg.rational && c.cfg.p > 4 * c.model->d();
  auto body = [&](const auto& k) {
    f.details = Json::array();
    std::vector<std::string> bad;
    for (const auto& e : c.entries()) {
      const auto r = image_dim(system_for(c, k, e), k, c.cfg.seed);
      Json j = entry_json(e);
      j["field"] = k.name();
      j["dimension"] = r.dimension;
      j["expected"] = r.expected;
      j["jacobian_ranks"] = r.ranks;
      j["seed"] = r.seed;
      f.details.push_back(j);
      if (r.dimension != r.expected)
        bad.push_back("ell=" + std::to_string(e.ell) + ": dimension " + std::to_string(r.dimension) + ", expected " +
                      std::to_string(r.expected));
    }
    f.summary = "dimensions checked over " + k.name();
    add_witnesses(f, bad);
    if (!bad.empty()) f.fail("image dimension differs from 2p + q - 2");
  };
  if (use_prime) body(PrimeField(c.cfg.p));
  else body(RationalField{});
}

void check_degree(const Context& c, Finding& f) {
  f.details = Json::array();
  std::string s;
  for (const auto& e : c.entries()) {
    Json j = entry_json(e);
    try {
      const mpz_class deg = degree_formula(e.p, e.q);
      j["degree"] = deg.get_str();
      s += (s.empty() ? "" : ", ") + std::string("ell=") + std::to_string(e.ell) + ": " + deg.get_str();
    } catch (const TheoremViolation& err) {
      f.witnesses.push_back(err.what());
    }
    f.details.push_back(j);
  }
  f.summary = "degrees " + s;
  if (!f.witnesses.empty()) f.fail("closed and product degree forms disagree");
}

void check_roundtrip(const Context& c, Finding& f) {
  const auto k = prime_field(c, f);
  if (!k) return;
  if (c.model->n() != 1) {
    f.skip("round trips need membership, available on P^1 only");
    return;
  }
  if (k->characteristic() <= c.model->d()) {
    f.skip("needs p > d");
    return;
  }
  f.details = Json::array();
  std::vector<std::string> bad;
  for (const auto& e : c.entries()) {
    const auto r = uniqueness_roundtrip(*c.model, e, *k, kRoundtripTrials, c.cfg.seed);
    Json j = entry_json(e);
    j["trials"] = r.trials;
    j["passed"] = r.passed;
    j["rejected_draws"] = r.rejected_draws;
    j["distinct_image_pairs"] = r.injectivity_pairs;
    j["seed"] = r.seed;
    f.details.push_back(j);
    add_witnesses(f, r.failures);
    if (!r.ok()) bad.push_back(r.instance);
  }
  f.summary = std::to_string(kRoundtripTrials) + " trials per entry";
  if (!bad.empty()) f.fail("membership did not recover the parameters");
}

void check_identities(const Context& c, Finding& f) {
  with_field(c.cfg, [&](const auto& k) {
    const std::uint64_t instances = c.cfg.rational ? 100 : 1000;
    auto tallies = identity_suite(*c.model, quad_ideal_basis(*c.model, k), k, instances, c.cfg.seed);
    if constexpr (std::is_same_v<std::decay_t<decltype(k)>, PrimeField>) {
      if (c.model->n() == 1 && c.model->d() == 2 && k.characteristic() <= 13)
        tallies.push_back(vanishing_exhaustive_p1_2(k));
    }
    f.details = Json::object();
    std::uint64_t failures = 0;
    for (const auto& t : tallies) {
      f.details[t.identity] = {{"instances", t.instances}, {"failures", t.failures}};
      failures += t.failures;
      for (const auto& w : t.witnesses) f.witnesses.push_back(t.identity + ": " + w);
    }
    f.summary = std::to_string(tallies.size()) + " identities, " + std::to_string(instances) + " draws each";
    if (failures) f.fail(std::to_string(failures) + " identity failures");
  });
}

void check_g2(const Context& c, Finding& f) {
  if (c.model->d() != 2 || c.model->n() < 2 || c.model->n() > 3) {
    f.skip("runs for (P^2, O(2)) and (P^3, O(2))");
    return;
  }
  const auto r = veronese_g2_check(c.model->n());
  f.details = {{"independent_coefficient_polys", r.independent},
               {"kernel_dimension", r.kernel_dim},
               {"representation_count", r.representation_count},
               {"displayed_binomial_product", r.displayed_product},
               {"displayed_product_matches", r.displayed_product == r.kernel_dim},
               {"certified", r.certified}};
  if (r.counted) {
    f.details["rank3_points_F5"] = r.phi3_count;
    f.details["parameter_points_F5"] = r.parameter_count;
  }
  f.summary = std::to_string(r.independent) + " independent coefficient polynomials, dim I_2 = " +
              std::to_string(r.kernel_dim);
  add_witnesses(f, r.failures);
  if (!r.ok()) f.fail("the Grassmannian identification fails");
}

void check_matrix(const Context& c, Finding& f) {
  with_field(c.cfg, [&](const auto& k) {
    const auto r = fixture_matrix_check(fixture_elliptic_quintic(k), k);
    f.details = {{"entries", 25}, {"mismatches", r.diffs.size()}, {"matrix", r.actual}};
    for (const auto& d : r.diffs)
      f.witnesses.push_back("M[" + std::to_string(d.row + 1) + "][" + std::to_string(d.col + 1) + "]: expected " +
                            d.expected + ", got " + d.actual);
    f.summary = std::to_string(25 - r.diffs.size()) + " of 25 entries match";
    if (!r.match) f.fail("assembled matrix differs from the expected one");
  });
}

void check_curve(const Context& c, Finding& f) {
  const auto k = prime_field(c, f);
  if (!k) return;
  const auto qs = fixture_elliptic_quintic(*k);
  const CurveSampler sampler(*k);
  const auto pts = sampler.sample(kCurveSamples, c.cfg.seed);
  std::uint64_t good = 0;
  for (const auto& pt : pts) {
    const std::vector<Fp> z(pt.data(), pt.data() + pt.size());
    bool ok = true;
    for (std::size_t j = 0; j < qs.dimension(); ++j) ok = ok && qs.poly(j).eval(z).is_zero();
    if (ok) ++good;
    else if (f.witnesses.size() < kMaxWitnesses) f.witnesses.push_back("point " + point_string<Fp>(z) + " misses a quadric");
  }
  f.details = {{"draws", kCurveSamples}, {"points", pts.size()}, {"on_all_quadrics", good}, {"seed", c.cfg.seed}};
  f.summary = std::to_string(good) + " of " + std::to_string(pts.size()) + " sampled points satisfy all quadrics";
  if (good != pts.size()) f.fail("sampled points off the curve");
}

using CheckFn = void (*)(const Context&, Finding&);

CheckFn check_by_name(const std::string& name) {
  static const std::map<std::string, CheckFn> table = {
      {"ideal", check_ideal},     {"phi2", check_phi2},       {"phi3count", check_phi3count},
      {"decompose", check_decompose}, {"qr3", check_qr3},     {"certify", check_certify},
      {"bpf", check_bpf},         {"dim", check_dim},         {"degree", check_degree},
      {"roundtrip", check_roundtrip}, {"identities", check_identities}, {"g2", check_g2},
      {"matrix", check_matrix},   {"curve", check_curve}};
  return table.at(name);
}

}  // namespace

RunReport run(const RunConfig& cfg) {
  cfg.validate();
  RunReport rep;
  rep.config = cfg;
  rep.show_timings = cfg.timings;
  Context ctx{cfg, cfg.variety.label() + " over " + cfg.field_name(), std::nullopt};
  if (cfg.variety.kind == VarietySpec::Kind::veronese) ctx.model.emplace(cfg.variety.n, cfg.variety.d);
  const auto checks = cfg.checks.empty() ? available_checks(cfg.variety) : cfg.checks;
  for (const auto& name : checks) {
    Finding f;
    f.check = name;
    f.instance = ctx.instance;
    const auto start = std::chrono::steady_clock::now();
    try {
      check_by_name(name)(ctx, f);
    } catch (const BudgetExceeded& e) {
      f.skip(std::string("budget: ") + e.what());
    } catch (const UnsupportedCharacteristic& e) {
      f.skip(e.what());
    } catch (const UnsupportedModel& e) {
      f.skip(e.what());
    } catch (const UnsupportedField& e) {
      f.skip(e.what());
    } catch (const TheoremViolation& e) {
      f.fail(e.what());
    } catch (const std::exception& e) {
      f.fail(std::string("error: ") + e.what());
    }
    rep.timings.emplace_back(name, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    rep.findings.push_back(std::move(f));
  }
  return rep;
}

}  // namespace quadrank
