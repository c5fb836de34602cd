#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace suptail {

/// Input/schema problems map to exit code 2.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> out_dir;
};

struct ScenarioResult {
  // 0 = all assertion-class checks passed; 1 = one failed; 2 = input error.
  // Report-class rows (constant chains, per-n VC reports, regime-boundary
  // findings) never touch the exit code.
  int exit_code = 0;
  long assertion_failures = 0;
  std::vector<std::string> artifacts;  // files written (CSV + JSON mirrors)
  std::string summary;                 // human-readable tables / diagnostics
};

/// Run one scenario file (JSON, strict schema: unknown keys are errors).
ScenarioResult run_scenario(const std::string& path, const ScenarioOverrides& overrides = {});

}  // namespace suptail
