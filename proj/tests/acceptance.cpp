// Runs the twelve acceptance criteria and the fixture negative control, one line each.
// Exit status is nonzero if any criterion fails or exceeds its time limit.
#include <chrono>
#include <cstdio>
#include <map>

#include "quadrank/golden.hpp"

using namespace quadrank;

namespace {

// seconds allowed per criterion
const std::map<int, double> kLimits{{1, 1},   {2, 10},  {3, 10}, {4, 300}, {5, 60},  {6, 300},
                                    {7, 120}, {8, 1},   {9, 60}, {10, 60}, {11, 60}, {12, 120}};

}  // namespace

int main() {
  const GoldenOptions opt;
  int failures = 0;
  for (const auto& c : acceptance_criteria()) {
    const auto t0 = std::chrono::steady_clock::now();
    Finding f;
    try {
      f = c.run(opt);
    } catch (const std::exception& e) {
      f.fail(std::string("error: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double limit = kLimits.at(c.id);
    bool ok = f.status == "pass";
    std::string why = f.reason;
    if (ok && secs > limit) {
      ok = false;
      why = "over the " + std::to_string(int(limit)) + " s limit";
    }
    failures += !ok;
    std::printf("%s  %2d %-24s %7.2f s  %s%s%s\n", ok ? "PASS" : "FAIL", c.id, c.slug.c_str(), secs, c.title.c_str(),
                why.empty() ? "" : "  -- ", why.c_str());
  }
  const Finding control = fixture_negative_control();
  failures += control.status != "pass";
  std::printf("%s  -- %-24s            corrupted fixture quadric is detected\n",
              control.status == "pass" ? "PASS" : "FAIL", "negative-control");
  std::printf("%d failing\n", failures);
  return failures == 0 ? 0 : 1;
}
