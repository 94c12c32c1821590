#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "quadrank/golden.hpp"
#include "quadrank/report.hpp"
#include "quadrank/wab_checks.hpp"

using namespace quadrank;

namespace {

struct Common {
  std::string variety = "pn";
  unsigned n = 1, d = 2;
  std::uint32_t p = 0;
  bool rational = false;
  bool no_extension = false;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool sampled = false;
  std::uint64_t samples = 10'000;
  std::uint64_t budget = 100'000'000;
  std::string out;
  bool text = false;
  bool timings = false;
};

void add_variety(CLI::App* app, Common& c) {
  app->add_option("--variety", c.variety, "pn or elliptic5-fixture")->check(CLI::IsMember({"pn", "elliptic5-fixture"}));
  app->add_option("--n", c.n, "dimension of the projective space");
  app->add_option("--d", c.d, "degree of the Veronese embedding");
}

void add_field(CLI::App* app, Common& c) {
  app->add_option("--p", c.p, "odd prime for F_p");
  app->add_flag("--rational", c.rational, "work over Q");
  app->add_flag("--no-extension", c.no_extension, "do not lift splits to F_(p^2)");
}

void add_output(CLI::App* app, Common& c) {
  app->add_option("--out", c.out, "write to FILE instead of stdout");
  app->add_flag("--text", c.text, "human-readable table instead of JSON");
  app->add_flag("--timings", c.timings, "include wall-clock timings (breaks byte stability)");
}

void add_sampling(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "master seed");
  app->add_option("--threads", c.threads, "worker threads for scans")->check(CLI::Range(1U, 256U));
  app->add_flag("--sampled", c.sampled, "sample instead of scanning exhaustively");
  app->add_option("--samples", c.samples, "number of samples when sampling");
  app->add_option("--budget", c.budget, "largest exhaustive scan")->check(CLI::PositiveNumber);
  app->add_flag("!--exhaustive", c.sampled, "scan every point (default)");
}

RunConfig config_of(const Common& c) {
  RunConfig cfg;
  cfg.variety = VarietySpec::parse(c.variety, c.n, c.d);
  cfg.p = c.p;
  cfg.rational = c.rational;
  cfg.allow_extension = !c.no_extension;
  cfg.seed = c.seed;
  cfg.threads = c.threads;
  cfg.exhaustive = !c.sampled;
  cfg.samples = c.samples;
  cfg.scan_budget = c.budget;
  cfg.timings = c.timings;
  return cfg;
}

void emit(const Common& c, const std::string& body) {
  if (c.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw std::runtime_error("cannot write " + c.out);
  f << body;
}

int emit_report(const Common& c, const RunReport& rep) {
  emit(c, c.text ? rep.to_text() : rep.to_json().dump(2) + "\n");
  return rep.failed() ? 1 : 0;
}

template <class Fn>
void with_field(const Common& c, Fn&& fn) {
  if (c.rational == (c.p != 0)) throw std::invalid_argument("choose exactly one field: --p P or --rational");
  if (c.rational) fn(RationalField{});
  else fn(PrimeField(c.p));
}

template <class Field>
auto space_of(const Common& c, const Field& k) {
  return c.variety == "pn" ? quad_ideal_basis(VeroneseModel(c.n, c.d), k) : fixture_elliptic_quintic(k);
}

int cmd_ideal(const Common& c) {
  Json j;
  j["schema"] = 1;
  j["version"] = version();
  with_field(c, [&](const auto& k) {
    const auto qs = space_of(c, k);
    j["variety"] = c.variety == "pn" ? VeroneseModel(c.n, c.d).name() : "elliptic5-fixture";
    j["field"] = k.name();
    j["dimension"] = qs.dimension();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < qs.ambient(); ++i) names.push_back("z" + std::to_string(i));
    j["quadrics"] = Json::array();
    for (std::size_t i = 0; i < qs.dimension(); ++i) j["quadrics"].push_back(to_string(qs.poly(i), names));
  });
  if (c.text) {
    std::string s = j["variety"].get<std::string>() + " over " + j["field"].get<std::string>() + ": dim I_2 = " +
                    std::to_string(j["dimension"].get<std::size_t>()) + "\n";
    for (std::size_t i = 0; i < j["quadrics"].size(); ++i)
      s += "  Q" + std::to_string(i) + " = " + j["quadrics"][i].get<std::string>() + "\n";
    emit(c, s);
  } else {
    emit(c, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_phi(const Common& c, unsigned k_rank, std::size_t max_points) {
  if (c.rational || c.p == 0) throw std::invalid_argument("phi scans need --p P");
  const PrimeField k(c.p);
  ScanOptions o;
  o.exhaustive = !c.sampled;
  o.samples = c.samples;
  o.seed = c.seed;
  o.threads = c.threads;
  o.budget = c.budget;
  o.max_listed = max_points;
  const auto rep = enumerate_phi(assemble_m(space_of(c, k)), k, k_rank, o);
  Json j;
  j["schema"] = 1;
  j["version"] = version();
  j["variety"] = c.variety == "pn" ? VeroneseModel(c.n, c.d).name() : "elliptic5-fixture";
  j["field"] = rep.field;
  j["k"] = rep.k;
  j["exhaustive"] = rep.exhaustive;
  j["total"] = rep.total;
  j["scanned"] = rep.scanned;
  if (!rep.exhaustive) {
    j["seed"] = rep.seed;
    j["chunks"] = rep.chunks;
  }
  Json counts = Json::object();
  for (const auto& [r, n] : rep.rank_counts) counts[std::to_string(r)] = n;
  j["rank_counts"] = counts;
  j["rank_at_most_k"] = rep.at_most(k_rank);
  j["points"] = Json::array();
  for (const auto& pt : rep.points) j["points"].push_back({{"coords", pt.coords}, {"rank", pt.rank}});
  j["truncated"] = rep.truncated;
  if (c.text) {
    std::string s = j["variety"].get<std::string>() + " over " + rep.field + ": scanned " +
                    std::to_string(rep.scanned) + " of " + std::to_string(rep.total) + "\n";
    for (const auto& [r, n] : rep.rank_counts) s += "  rank " + std::to_string(r) + ": " + std::to_string(n) + "\n";
    for (const auto& pt : rep.points) s += "  " + point_string(pt.coords) + " rank " + std::to_string(pt.rank) + "\n";
    emit(c, s);
  } else {
    emit(c, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_polys(const Common& c, std::optional<unsigned> ell) {
  Json j;
  j["schema"] = 1;
  j["version"] = version();
  std::string text;
  with_field(c, [&](const auto& k) {
    const VeroneseModel model(c.n, c.d);
    const auto qs = quad_ideal_basis(model, k);
    j["model"] = model.name();
    j["field"] = k.name();
    j["entries"] = Json::array();
    for (const auto& e : model.sigma_list()) {
      if (ell && *ell != e.ell) continue;
      auto sys = coefficient_polys(model, qs, e);
      const auto cert = plucker_certify(sys, k(1));
      std::vector<std::string> z_names(sys.names.begin() + 2 * (e.p + 1), sys.names.end());
      Json ej = {{"ell", e.ell}, {"p", e.p}, {"q", e.q}, {"G", Json::array()}};
      text += model.name() + " ell=" + std::to_string(e.ell) + " (p=" + std::to_string(e.p) + ", q=" +
              std::to_string(e.q) + ")\n";
      for (std::size_t i = 0; i < sys.g.size(); ++i) {
        std::string plucker;
        for (const auto& t : cert.expressions[i]) {
          const std::string term = to_string(t, z_names);
          if (plucker.empty()) plucker = term;
          else if (term.front() == '-') plucker += " - " + term.substr(1);
          else plucker += " + " + term;
        }
        if (plucker.empty()) plucker = "0";
        ej["G"].push_back({{"poly", to_string(sys.g[i], sys.names)}, {"plucker", plucker}});
        text += "  G" + std::to_string(i) + " = " + plucker + "\n";
      }
      j["entries"].push_back(ej);
    }
  });
  emit(c, c.text ? text : j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-3 quadratic equations of projective varieties: loci, decompositions and checks"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  Common c;

  auto* ideal = app.add_subcommand("ideal", "basis of the quadrics containing the variety");
  add_variety(ideal, c);
  add_field(ideal, c);
  add_output(ideal, c);

  unsigned k_rank = 3;
  std::size_t max_points = 1000;
  auto* phi = app.add_subcommand("phi", "bin the points of P(I_2)(F_p) by rank");
  add_variety(phi, c);
  add_field(phi, c);
  add_sampling(phi, c);
  add_output(phi, c);
  phi->add_option("--k", k_rank, "list points of rank <= k")->check(CLI::Range(1U, 64U));
  phi->add_option("--max-points", max_points, "largest number of listed points");

  std::string mode = "certify";
  std::optional<unsigned> ell;
  auto* wab = app.add_subcommand("wab", "coefficient polynomials of Q(s,t,h) and checks on them");
  add_variety(wab, c);
  add_field(wab, c);
  add_sampling(wab, c);
  add_output(wab, c);
  wab->add_option("--ell", ell, "restrict to one entry ell");
  wab->add_option("mode", mode, "certify, dim, degree, bpf, roundtrip, identities or polys")
      ->check(CLI::IsMember({"certify", "dim", "degree", "bpf", "roundtrip", "identities", "polys"}));

  auto* decompose = app.add_subcommand("decompose", "witness every rank-3 point by a decomposition");
  add_variety(decompose, c);
  add_field(decompose, c);
  add_sampling(decompose, c);
  add_output(decompose, c);

  auto* qr3 = app.add_subcommand("qr3", "span of the rank-3 quadrics");
  add_variety(qr3, c);
  add_field(qr3, c);
  add_sampling(qr3, c);
  add_output(qr3, c);

  auto* fixture = app.add_subcommand("fixture", "checks on the elliptic quintic fixture");
  add_field(fixture, c);
  add_sampling(fixture, c);
  add_output(fixture, c);

  std::vector<std::string> checks;
  bool all = false;
  auto* report = app.add_subcommand("report", "run a list of checks on one instance");
  add_variety(report, c);
  add_field(report, c);
  add_sampling(report, c);
  add_output(report, c);
  report->add_option("--checks", checks, "comma-separated checks")->delimiter(',');
  report->add_flag("--all", all, "every check available for the variety");
  report->add_option("--ell", ell, "restrict wab checks to one entry ell");

  auto* golden = app.add_subcommand("golden", "the full acceptance matrix");
  add_sampling(golden, c);
  add_output(golden, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ideal->parsed()) return cmd_ideal(c);
    if (phi->parsed()) return cmd_phi(c, k_rank, max_points);
    if (wab->parsed() && mode == "polys") return cmd_polys(c, ell);
    if (golden->parsed()) {
      auto rep = golden_suite({c.seed, c.threads});
      rep.show_timings = c.timings;
      return emit_report(c, rep);
    }
    if (fixture->parsed()) {
      c.variety = "elliptic5-fixture";
      if (c.p == 0 && !c.rational) c.p = 7;
    }
    RunConfig cfg = config_of(c);
    cfg.ell = ell;
    if (wab->parsed()) cfg.checks = {mode};
    if (decompose->parsed()) cfg.checks = {"decompose"};
    if (qr3->parsed()) cfg.checks = {"qr3"};
    if (report->parsed()) {
      if (all == !checks.empty()) throw std::invalid_argument("report needs exactly one of --checks and --all");
      cfg.checks = all ? available_checks(cfg.variety) : checks;
    }
    if (fixture->parsed()) cfg.checks = available_checks(cfg.variety);
    return emit_report(c, run(cfg));
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
