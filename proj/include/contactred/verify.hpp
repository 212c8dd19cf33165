#pragma once

// The per-scenario verification suite and its structured report.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "contactred/reduction.hpp"

namespace contactred {

inline constexpr int kReportSchemaVersion = 1;

struct CheckResult {
  std::string name;
  int samples = 0;
  double max_residual = 0.0;          ///< NaN when the check threw
  std::optional<double> min_factor;   ///< smallest positivity factor, if the check has one
  bool pass = false;
  std::string error;                  ///< exception text; not part of the report
};

struct ScenarioReport {
  std::string name;
  int n = 0;
  DimensionAudit dimensions;
  std::vector<CheckResult> checks;  ///< sorted by name

  bool pass() const;
  const CheckResult* find(const std::string& check) const;
};

/// Runs every applicable check for the scenario with its own samples, tol
/// and seed. Residual tolerances are the library constants scaled by
/// tol / 1e-9. Checks never throw; failures are recorded.
ScenarioReport run_scenario(const ReductionScenario& s);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<std::string> scenarios;  ///< names, or the single entry "all"
  std::optional<int> n;                ///< size override for every sized scenario
  int samples = 64;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  std::string out;                     ///< report path; empty means none
  bool quiet = false;
};

/// Expands "all", rejects unknown names and bad values. Throws ConfigError.
std::vector<ReductionScenario> resolve(const RunConfig& config);

struct VerificationReport {
  RunConfig config;
  std::vector<ScenarioReport> scenarios;  ///< sorted by name

  bool pass() const;
};

VerificationReport run_suite(const RunConfig& config);

/// Deterministic JSON document for a report.
std::string to_json(const VerificationReport& report);

/// Validates, runs, writes the report and a human summary to `log`.
/// Returns 0 when every check passes, 1 on a failed check, 2 on a
/// configuration error (no report written).
int run_verify(const RunConfig& config, std::ostream& log);

}  // namespace contactred
