#pragma once
// Check results and the versioned JSON report.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gforms/lie_backend.hpp"
#include "gforms/numeric.hpp"

namespace gforms {

struct RunConfig {
  std::string suite = "all";
  std::string backend = "sl2";
  int n = 0;  // gln size; 0 = not applicable
  int trials = 200;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::string output;  // empty = stdout
  ExecMode mode = ExecMode::parallel;
};

struct CheckResult {
  std::string id;         // stable anchor, e.g. "cech.gg.pair.middle"
  std::string statement;  // the identity in ASCII math
  enum class Status { pass, fail, inconclusive } status;
  bool control = false;  // deliberately broken variant: pass = detected
  double max_residual = 0.0;
  int trials = 0;
  nlohmann::ordered_json details;  // witness, ranks, etc. (may be null)
};

/// Convert an equality report into a check result; for controls pass
/// expect_not_equal = true (the check passes when the engine detects the
/// difference and can exhibit a witness).
CheckResult check_from_eq(const std::string& id, const std::string& statement,
                          const EqReport& eq, bool expect_not_equal = false);

nlohmann::ordered_json witness_json(const EqWitness& w);

nlohmann::ordered_json make_report(const RunConfig& cfg, const Backend& b,
                                   const std::vector<CheckResult>& checks);

/// True when no check failed (controls count as failed when undetected).
bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace gforms
