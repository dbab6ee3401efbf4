#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fw/oracle.hpp"

namespace fw {

/// Raised when backtracking exhausts its shrink budget (usually a wrong L).
struct StepFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class StepRuleKind { HarmonicTwo, PowerDecay, AdaptiveNonconvex, AdaptiveRelative, Backtracking };

/// Step-size schedule. Open-loop rules emit values in [0, 1) so the product
/// sequences below stay finite: HarmonicTwo is the classical 2/(k+2) schedule
/// counted from k = 1 (so 2/(k+3) at index k), PowerDecay is (k+1)^-p capped
/// below one. Both satisfy sum = inf, sum of squares < inf, and decrease to 0
/// (required by the convex analysis); validate() enforces p in (1/2, 1].
struct StepRule {
  StepRuleKind kind = StepRuleKind::HarmonicTwo;
  double power = 0.75;   // PowerDecay exponent
  double eta = 0.5;      // Backtracking shrink factor
  double alpha0 = 1.0;   // Backtracking initial trial

  static StepRule harmonic_two();
  static StepRule power_decay(double p);
  static StepRule adaptive_nonconvex();
  static StepRule adaptive_relative();
  static StepRule backtracking(double eta, double alpha0);

  double open_loop(int k) const;
  void validate() const;
};

/// beta_k = 1 / prod_{j<k} (1 - a_j) and alpha_k = beta_k a_k / (1 - a_k),
/// with the empty product equal to 1. beta has one more entry than steps.
struct AveragingSequences {
  std::vector<double> beta;
  std::vector<double> alpha;
};

AveragingSequences averaging_sequences(const std::vector<double>& steps);

/// C >= max{L D^2, G D}; construction refuses smaller overrides because the
/// decrease guarantees need the dominance.
struct CurvatureConstant {
  double value = 0.0;

  static CurvatureConstant from(const Objective& obj, const FeasibleSet& set,
                                std::optional<double> override_up = {});
};

struct IterateRecord {
  int k = 0;
  Vec x;
  double f = 0.0;
  double alpha_bar = 0.0;
  double gap_exact = 0.0;
  double gap_approx = 0.0;
  double grad_norm = 0.0;
  double slack_onestep = 0.0;  // >= 0 when the per-step decrease holds
  double beta = 1.0;
  double delta_eff = 0.0;      // certified oracle error at this query
  bool clamped = false;
  bool null_step = false;
};

enum class SolverVariant { Convex, Nonconvex, Relative, Backtracking };

/// Full run record: one row per iterate 0..K (the final row carries the end
/// point with a zero step), plus the constants the inequality checks need.
struct IterateTrace {
  SolverVariant variant = SolverVariant::Convex;
  std::vector<IterateRecord> rows;
  double lipschitz = 0.0;
  double diameter = 0.0;
  double curvature = 0.0;         // NaN for convex runs
  double delta_base = 0.0;
  double delta_floor = 0.0;
  double f_star = 0.0;            // NaN when unknown
  double eta = 1.0;               // backtracking shrink (1 otherwise)
  int clamped_steps = 0;
  int null_steps = 0;

  double min_gap_exact() const;
  double final_f() const;
  bool has_fstar() const;
  double final_suboptimality() const;  // requires has_fstar()
};

struct SolverOptions {
  bool early_stop_on_null = false;  // off by default: prefix bounds quantify over all K
  int null_patience = 50;
};

IterateTrace solve_convex_fw(const Objective& obj, const FeasibleSet& set,
                             const InexactOracle& oracle, const StepRule& step, const Vec& x0,
                             int k_max, const SolverOptions& options = {});

IterateTrace solve_nonconvex_fw(const Objective& obj, const FeasibleSet& set,
                                const InexactOracle& oracle, const CurvatureConstant& curvature,
                                double delta, const Vec& x0, int k_max,
                                const SolverOptions& options = {});

IterateTrace solve_relative_fw(const Objective& obj, const FeasibleSet& set,
                               const InexactOracle& oracle, const CurvatureConstant& curvature,
                               double delta, const Vec& x0, int k_max,
                               const SolverOptions& options = {});

IterateTrace solve_backtracking_fw(const Objective& obj, const FeasibleSet& set,
                                   const InexactOracle& oracle, double lipschitz, double eta,
                                   double alpha0, const Vec& x0, int k_max,
                                   const SolverOptions& options = {});

struct MarginReport {
  bool holds = false;        // dist(x_k, boundary) >= r at every iterate
  double min_distance = 0.0;
  std::vector<double> slacks;  // gap - r * ||grad|| per iterate
  double worst_slack = 0.0;
};

MarginReport margin_check(const IterateTrace& trace, const FeasibleSet& set, double r);

bool traces_identical(const IterateTrace& a, const IterateTrace& b);

}  // namespace fw
