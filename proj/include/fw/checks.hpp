#pragma once

#include <limits>
#include <string>
#include <vector>

#include "fw/oracle.hpp"
#include "fw/reduction.hpp"
#include "fw/solver.hpp"

namespace fw {

/// One named verification with the worst witnessed instance. `slack` is the
/// minimum of rhs - lhs over everything the check quantifies; pass means it
/// stayed above the check's tolerance.
struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string check_name) : name(std::move(check_name)) {}

  std::string name;
  bool pass = true;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = std::numeric_limits<double>::infinity();
  std::string detail;

  void observe(double lhs_value, double rhs_value);
  void finish(double tolerance);
};

// --- trace-level checks -----------------------------------------------------

/// Convex per-step decrease: recorded slack >= -1e-9 at every iterate.
CheckResult check_convex_one_step(const IterateTrace& trace);

/// Telescoping of the weight increments: sum_{j<=k}(beta_{j+1}-beta_j) equals
/// beta_{k+1}-1 within 1e-9 relative, every prefix.
CheckResult check_telescoping(const IterateTrace& trace);

/// Weighted recursion: beta_{k+1} e_{k+1} <= beta_k e_k + 2 a_k beta_{k+1} d_k
/// + L D^2 a_k^2 beta_{k+1} / 2, within 1e-9 relative, every iterate.
CheckResult check_weighted_recursion(const IterateTrace& trace);

/// Final suboptimality <= 2 * (asymptotic oracle error) + tolerance.
CheckResult check_delta_floor(const IterateTrace& trace, double tolerance);

/// Adaptive per-step decrease (additive, relative, or backtracking slack).
CheckResult check_one_step_decrease(const IterateTrace& trace);

/// Every prefix K: sum of squared step surpluses <= 2C (f_0 - f_{K+1}) + 1e-6.
CheckResult check_descent_prefix_sum(const IterateTrace& trace);

/// Prefixes K: min_{k<=K} gap <= sqrt(2C(f_0 - f*)/(K+1)) + 2 delta + 1e-9.
CheckResult check_gap_rate_bound(const IterateTrace& trace, const std::vector<int>& prefixes,
                                 double f_star_low);

/// Every prefix: min (gap - 2 delta ||grad||)_+ <= sqrt(2C(f_0 - f*)/(K+1)) + 1e-9.
CheckResult check_relative_gap_rate(const IterateTrace& trace, double f_star_low);

/// Margin instance: min gap <= (1 - 2 delta / r)^{-1} sqrt(2C(f_0-f*)/(K+1)) + 1e-9,
/// requiring delta < r/2 and the margin to hold on the whole trajectory.
CheckResult check_interior_margin_rate(const IterateTrace& trace, const FeasibleSet& set, double r,
                                       double f_star_low);

/// dist >= r everywhere and gap >= r ||grad|| - 1e-9 everywhere.
CheckResult check_margin(const IterateTrace& trace, const FeasibleSet& set, double r);

CheckResult check_gap_below(const IterateTrace& trace, double threshold);

CheckResult check_feasibility(const IterateTrace& trace, const FeasibleSet& set);

/// Convex sanity envelope: final suboptimality <= factor * L D^2 / (K + 2).
CheckResult check_classical_envelope(const IterateTrace& trace, double factor);

/// Report-only: largest ratio of gap to the decaying-accuracy envelope
/// 27 L D^2 (1 + delta) / (4 (k+2)). Never gates.
CheckResult check_scheduled_gap_envelope(const IterateTrace& trace);

// --- point-level checks (quantified over sampled feasible points) -----------

/// |<g(x) - grad f(x), x - y>| <= certified level, 1e3 (x, y) pairs, 1e-12.
CheckResult check_oracle_certification(const InexactOracle& oracle, const FeasibleSet& set,
                                       int n_points, std::uint64_t seed);

/// <grad f(x), lmo(g(x))> <= min_s <grad f(x), s> + 2 * level + 1e-9.
CheckResult check_lmo_transfer(const InexactOracle& oracle, const FeasibleSet& set, int n_points,
                               std::uint64_t seed);

/// |G(x) - G~(x)| <= certified level + 1e-9.
CheckResult check_gap_closeness(const InexactOracle& oracle, const FeasibleSet& set, int n_points,
                                std::uint64_t seed);

/// Convex transfer to the optimum: f* >= f(x) + min_y <g(x), y - x> - level - 1e-9.
CheckResult check_convex_lower_bound(const InexactOracle& oracle, const FeasibleSet& set,
                                     double f_star, int n_points, std::uint64_t seed);

// --- module suites -----------------------------------------------------------

/// `scale` multiplies the sample counts (1.0 = production volumes).
std::vector<CheckResult> verify_geometry(std::uint64_t seed, double scale = 1.0);
std::vector<CheckResult> verify_oracles(std::uint64_t seed, double scale = 1.0);
std::vector<CheckResult> verify_solvers(std::uint64_t seed);
std::vector<CheckResult> verify_reduction(std::uint64_t seed, double scale = 1.0);
std::vector<CheckResult> verify_all(std::uint64_t seed, double scale = 1.0);

bool all_pass(const std::vector<CheckResult>& results);

/// Resolves the reference optimum used on the right-hand side of the rate
/// bounds: the exact closed form when one exists, otherwise a certified
/// lower bound so the bound check never produces a false failure.
double resolve_fstar_low(const Objective& obj, const FeasibleSet& set);

}  // namespace fw
