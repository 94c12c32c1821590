#pragma once

// Check orchestration: a run configuration, the findings it produces, and their JSON
// and text renderings.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace quadrank {

using Json = nlohmann::ordered_json;

struct VarietySpec {
  enum class Kind { veronese, elliptic_fixture };
  Kind kind = Kind::veronese;
  unsigned n = 1, d = 2;  ///< veronese only

  static VarietySpec parse(const std::string& name, unsigned n, unsigned d);
  std::string name() const;  ///< "pn" or "elliptic5-fixture"
  std::string label() const; ///< "P2/O(2)" or "elliptic quintic fixture"
};

struct RunConfig {
  VarietySpec variety;
  std::uint32_t p = 0;   ///< prime field, or 0 with rational
  bool rational = false;
  bool allow_extension = true;
  std::vector<std::string> checks;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool exhaustive = true;
  std::uint64_t samples = 10'000;
  std::uint64_t scan_budget = 100'000'000;
  std::uint64_t symbolic_budget = 200'000;
  std::optional<unsigned> ell;  ///< restrict wab checks to one entry
  bool timings = false;

  /// Throws std::invalid_argument on an unknown check or a missing field.
  void validate() const;
  std::string field_name() const;
  Json to_json() const;
};

struct Finding {
  std::string check, instance;
  std::string status = "pass";  ///< pass, fail or skipped
  std::string reason;
  std::string summary;  ///< one line for the text table
  std::vector<std::string> witnesses;
  Json details = Json::object();

  Finding& fail(std::string why) {
    status = "fail";
    reason = std::move(why);
    return *this;
  }
  Finding& skip(std::string why) {
    status = "skipped";
    reason = std::move(why);
    return *this;
  }
  bool failed() const { return status == "fail"; }
  Json to_json() const;
};

struct RunReport {
  std::optional<RunConfig> config;  ///< absent for the golden suite
  std::vector<Finding> findings;
  std::vector<std::pair<std::string, double>> timings;
  bool show_timings = false;

  bool failed() const;
  Json to_json() const;
  std::string to_text() const;
};

/// Checks available for a variety, in execution order.
std::vector<std::string> available_checks(const VarietySpec& v);

/// Runs the configured checks in order. Unsupported combinations produce skipped
/// findings; theorem violations produce failed ones.
RunReport run(const RunConfig& cfg);

std::string version();

}  // namespace quadrank
