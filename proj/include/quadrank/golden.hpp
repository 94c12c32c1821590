#pragma once

// The acceptance matrix: twelve end-to-end criteria plus a negative control, shared by
// the `golden` subcommand and the acceptance test binary.

#include <functional>
#include <string>
#include <vector>

#include "quadrank/report.hpp"

namespace quadrank {

struct GoldenOptions {
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct Criterion {
  int id = 0;
  std::string slug;
  std::string title;
  std::function<Finding(const GoldenOptions&)> run;
};

const std::vector<Criterion>& acceptance_criteria();

/// Replaces one coefficient of the fourth fixture quadric and expects the matrix check
/// to fail with a diff. Passes when the corruption is detected.
Finding fixture_negative_control();

/// Runs every criterion and the negative control; statuses do not depend on the seed.
RunReport golden_suite(const GoldenOptions& opt = {});

}  // namespace quadrank
