#include <gtest/gtest.h>

#include <set>

#include "quadrank/golden.hpp"
#include "quadrank/report.hpp"

using namespace quadrank;

namespace {

RunConfig quartics(std::vector<std::string> checks, std::uint64_t seed = 0) {
  RunConfig cfg;
  cfg.variety = VarietySpec::parse("pn", 1, 4);
  cfg.p = 7;
  cfg.checks = std::move(checks);
  cfg.seed = seed;
  return cfg;
}

std::vector<std::string> statuses(const RunReport& r) {
  std::vector<std::string> out;
  for (const auto& f : r.findings) out.push_back(f.check + ":" + f.status);
  return out;
}

}  // namespace

TEST(Report, SameSeedGivesIdenticalBytes) {
  const auto cfg = quartics({"ideal", "phi2", "decompose", "qr3", "roundtrip", "identities"}, 5);
  EXPECT_EQ(run(cfg).to_json().dump(2), run(cfg).to_json().dump(2));
}

TEST(Report, StatusesDoNotDependOnTheSeed) {
  const std::vector<std::string> checks{"ideal", "phi2", "phi3count", "decompose", "qr3", "bpf", "roundtrip", "identities"};
  const auto a = run(quartics(checks, 0)), b = run(quartics(checks, 1));
  EXPECT_EQ(statuses(a), statuses(b));
  EXPECT_FALSE(a.failed());
  EXPECT_EQ(a.to_json()["config"]["seed"], 0);
  EXPECT_EQ(b.to_json()["config"]["seed"], 1);
}

TEST(Report, EveryRequestedCheckAppearsOnce) {
  const std::vector<std::string> checks{"ideal", "certify", "dim", "degree"};
  const auto r = run(quartics(checks));
  std::vector<std::string> seen;
  for (const auto& f : r.findings)
    if (seen.empty() || seen.back() != f.check) seen.push_back(f.check);
  EXPECT_EQ(seen, checks);
  for (const auto& f : r.findings) EXPECT_TRUE(f.status == "pass" || f.status == "fail" || f.status == "skipped");
}

TEST(Report, JsonShape) {
  const auto j = run(quartics({"ideal"})).to_json();
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["version"], version());
  EXPECT_EQ(j["config"]["field"], "F_7");
  EXPECT_EQ(j["totals"]["pass"], 1);
  EXPECT_EQ(j["totals"]["fail"], 0);
  EXPECT_FALSE(j.contains("timings_seconds"));
  const auto& f = j["findings"][0];
  for (const char* key : {"check", "instance", "status", "witnesses"}) EXPECT_TRUE(f.contains(key)) << key;
}

TEST(Report, TimingsOnlyWhenRequested) {
  auto cfg = quartics({"ideal"});
  cfg.timings = true;
  EXPECT_TRUE(run(cfg).to_json().contains("timings_seconds"));
}

TEST(Report, UnsupportedCombinationsAreSkippedWithAReason) {
  RunConfig cfg;
  cfg.variety = VarietySpec::parse("pn", 1, 5);
  cfg.p = 5;
  cfg.checks = {"decompose", "roundtrip"};
  const auto r = run(cfg);
  ASSERT_FALSE(r.findings.empty());
  for (const auto& f : r.findings) {
    EXPECT_EQ(f.status, "skipped") << f.check;
    EXPECT_FALSE(f.reason.empty());
  }
  EXPECT_FALSE(r.failed());
}

TEST(Report, OverBudgetScanIsSkipped) {
  auto cfg = quartics({"phi2"});
  cfg.scan_budget = 10;
  const auto r = run(cfg);
  ASSERT_EQ(r.findings.size(), 1U);
  EXPECT_EQ(r.findings[0].status, "skipped");
}

TEST(Report, ValidationRejectsBadConfigs) {
  EXPECT_THROW(quartics({"nonsense"}).validate(), std::invalid_argument);
  auto no_field = quartics({"ideal"});
  no_field.p = 0;
  EXPECT_THROW(no_field.validate(), std::invalid_argument);
  EXPECT_THROW(VarietySpec::parse("grassmannian", 1, 2), std::invalid_argument);
  auto fixture = quartics({"certify"});
  fixture.variety = VarietySpec::parse("elliptic5-fixture", 0, 0);
  EXPECT_THROW(fixture.validate(), std::invalid_argument);
}

TEST(Report, ExitContractFollowsFindings) {
  RunReport r;
  r.findings.push_back(Finding{"a", "x"});
  Finding skipped{"b", "x"};
  skipped.skip("not applicable");
  r.findings.push_back(skipped);
  EXPECT_FALSE(r.failed());
  Finding bad{"c", "x"};
  bad.fail("broken");
  r.findings.push_back(bad);
  EXPECT_TRUE(r.failed());
  EXPECT_EQ(r.to_json()["totals"]["fail"], 1);
  EXPECT_EQ(r.to_json()["totals"]["skipped"], 1);
}

TEST(Report, AvailableChecksPerVariety) {
  EXPECT_EQ(available_checks(VarietySpec::parse("elliptic5-fixture", 0, 0)),
            (std::vector<std::string>{"matrix", "phi2", "phi3count", "curve"}));
  const auto pn = available_checks(VarietySpec::parse("pn", 2, 2));
  EXPECT_EQ(pn.front(), "ideal");
  EXPECT_NE(std::find(pn.begin(), pn.end(), "g2"), pn.end());
}

TEST(Report, TextTableListsEveryFinding) {
  const auto r = run(quartics({"ideal", "degree"}));
  const auto text = r.to_text();
  EXPECT_NE(text.find("ideal"), std::string::npos);
  EXPECT_NE(text.find("degree"), std::string::npos);
  EXPECT_NE(text.find("F_7"), std::string::npos);
}

TEST(Report, FixtureChecksPassAtSeven) {
  RunConfig cfg;
  cfg.variety = VarietySpec::parse("elliptic5-fixture", 0, 0);
  cfg.p = 7;
  cfg.checks = available_checks(cfg.variety);
  const auto r = run(cfg);
  for (const auto& f : r.findings) EXPECT_EQ(f.status, "pass") << f.check << ": " << f.reason;
}

TEST(Golden, TwelveCriteriaWithDistinctSlugs) {
  const auto& all = acceptance_criteria();
  ASSERT_EQ(all.size(), 12U);
  std::set<std::string> slugs;
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(all[i].id, int(i + 1));
    slugs.insert(all[i].slug);
  }
  EXPECT_EQ(slugs.size(), 12U);
}

TEST(Golden, NegativeControlDetectsTheCorruption) {
  const auto f = fixture_negative_control();
  EXPECT_EQ(f.status, "pass") << f.reason;
  EXPECT_FALSE(f.witnesses.empty());
}
