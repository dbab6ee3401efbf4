#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fw/checks.hpp"
#include "fw/config.hpp"
#include "fw/reduction.hpp"

#include "json.hpp"

namespace fw {

/// Output directory resolution order: explicit argument, FW_OUTPUT_DIR, ".".
std::string resolve_output_dir(const std::string& cli_override);

struct RunOutcome {
  IterateTrace trace;
  std::vector<CheckResult> checks;
  bool all_pass = true;
  nlohmann::json verdict;
};

/// Runs the configured solver, evaluates the enabled checks, writes the CSV
/// trace and JSON verdict (when paths are configured), and reports pass/fail.
RunOutcome run_experiment(const ExperimentConfig& config, const std::string& out_dir);

struct SweepPoint {
  std::string value;
  double min_gap = 0.0;
  double final_f = 0.0;
  double final_suboptimality = 0.0;  // NaN when f* unknown
  bool all_pass = true;
};

struct SweepOutcome {
  std::vector<SweepPoint> points;
  std::optional<double> loglog_slope;  // k_max sweeps: fit of log(min_gap - 2*floor) vs log K
  std::optional<double> delta_slope;   // delta sweeps: fit of final suboptimality vs delta
  bool all_pass = true;
  nlohmann::json summary;
};

/// Re-runs the config once per value of `param` (delta | k_max | step |
/// lambda | eps), shared seed, and aggregates one row per run. lambda/eps
/// sweeps require a [reduction] config and exercise the projection-to-LMO
/// path instead of a solver.
SweepOutcome run_sweep(const ExperimentConfig& config, const std::string& param,
                       const std::vector<std::string>& values, const std::string& out_dir);

struct ReduceOutcome {
  std::vector<ReductionReport> reports;
  bool all_pass = true;
  nlohmann::json summary;
};

ReduceOutcome run_reduce(const ExperimentConfig& config, const std::string& out_dir);

struct VerifyOutcome {
  std::vector<CheckResult> checks;
  bool all_pass = true;
  nlohmann::json verdict;
};

VerifyOutcome run_verify(std::uint64_t seed, const std::string& out_dir, double scale = 1.0);

}  // namespace fw
