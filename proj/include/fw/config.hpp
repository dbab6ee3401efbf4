#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fw/oracle.hpp"
#include "fw/solver.hpp"
#include "fw/toml.hpp"

namespace fw {

/// Validation failure carrying every violated rule, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v);
  std::vector<std::string> violations_;
};

struct SetSpec {
  std::string kind = "interval";
  int dim = 1;
  double lo = -1.0, hi = 1.0;
  double radius = 1.0;

  bool operator==(const SetSpec&) const = default;
};

struct ObjectiveSpec {
  std::string kind = "scalar_square";  // scalar_square | quadratic | shifted_quadratic
  std::vector<double> diag;            // quadratic: diagonal of A
  std::vector<double> dense;           // quadratic: row-major A (overrides diag)
  std::vector<double> linear;          // quadratic: b
  std::vector<double> target;          // shifted_quadratic: x*
  std::optional<double> f_star;
  std::optional<double> lipschitz;     // upward override of L

  bool operator==(const ObjectiveSpec&) const = default;
};

struct OracleSpec {
  std::string model = "exact";  // exact | additive_worst_case | additive_sign |
                                // additive_scheduled | relative_worst_case
  double delta = 0.0;
  std::string schedule = "harmonic";  // harmonic | inv_sqrt (scheduled model only)
  std::uint64_t seed = 0;

  bool operator==(const OracleSpec&) const = default;
};

struct SolverSpec {
  std::string variant = "convex";  // convex | nonconvex | relative | backtracking
  std::string step = "harmonic";   // harmonic | power (convex variants)
  double power = 0.75;
  int k_max = 1000;
  std::optional<double> c_override;
  double eta = 0.5;
  double alpha0 = 1.0;
  std::vector<double> x0;  // empty: start from the set center
  bool early_stop = false;

  bool operator==(const SolverSpec&) const = default;
};

struct ChecksSpec {
  std::vector<std::string> enabled;
  std::vector<int> prefix_ks;       // gap-rate prefixes; empty = {K_max}
  double margin_r = 0.0;            // interior margin radius
  double gap_threshold = 1e-3;      // gap_below target
  double floor_tolerance = 0.01;    // delta_floor additive tolerance
  double envelope_factor = 10.0;    // classical_envelope slack factor

  bool operator==(const ChecksSpec&) const = default;
};

struct ReductionSpec {
  bool present = false;
  double slack_k = 0.0;
  std::optional<double> eps;
  std::optional<double> lambda;
  int n_instances = 100;
  std::uint64_t seed = 0;
  std::vector<double> x;  // fixed query point; empty: seeded gaussians

  bool operator==(const ReductionSpec&) const = default;
};

struct OutputSpec {
  std::string csv;   // empty: skip
  std::string json;  // empty: skip

  bool operator==(const OutputSpec&) const = default;
};

struct ExperimentConfig {
  SetSpec set;
  ObjectiveSpec objective;
  OracleSpec oracle;
  SolverSpec solver;
  ChecksSpec checks;
  ReductionSpec reduction;
  OutputSpec output;

  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::string& path);
  std::string to_toml() const;

  /// Collects every violated cross-field rule; empty means valid.
  std::vector<std::string> validate() const;
  /// Throws ConfigError listing all violations.
  void require_valid() const;

  FeasibleSet build_set() const;
  Objective build_objective() const;
  InexactOracle build_oracle() const;
  IterateTrace run_solver() const;

  bool operator==(const ExperimentConfig&) const = default;
};

}  // namespace fw
