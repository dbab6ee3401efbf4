#include "fw/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fw {

namespace {
constexpr double kOpenLoopCap = 0.999;
constexpr double kStepCap = 1.0 - 1e-12;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

double positive_part(double u) { return u > 0.0 ? u : 0.0; }
}  // namespace

StepRule StepRule::harmonic_two() { return StepRule{StepRuleKind::HarmonicTwo, 0, 0.5, 1.0}; }

StepRule StepRule::power_decay(double p) { return StepRule{StepRuleKind::PowerDecay, p, 0.5, 1.0}; }

StepRule StepRule::adaptive_nonconvex() { return StepRule{StepRuleKind::AdaptiveNonconvex, 0, 0.5, 1.0}; }

StepRule StepRule::adaptive_relative() { return StepRule{StepRuleKind::AdaptiveRelative, 0, 0.5, 1.0}; }

StepRule StepRule::backtracking(double eta, double alpha0) {
  return StepRule{StepRuleKind::Backtracking, 0, eta, alpha0};
}

double StepRule::open_loop(int k) const {
  switch (kind) {
    case StepRuleKind::HarmonicTwo:
      return 2.0 / double(k + 3);
    case StepRuleKind::PowerDecay:
      return std::min(std::pow(double(k + 1), -power), kOpenLoopCap);
    default:
      throw std::invalid_argument("open_loop: not an open-loop step rule");
  }
}

void StepRule::validate() const {
  switch (kind) {
    case StepRuleKind::HarmonicTwo:
      return;  // divergent sum, square-summable, decreasing
    case StepRuleKind::PowerDecay:
      if (!(power > 0.5 && power <= 1.0)) {
        throw std::invalid_argument(
            "power_decay: p must lie in (0.5, 1] so the step conditions hold");
      }
      return;
    case StepRuleKind::Backtracking:
      if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("backtracking: eta must be in (0,1)");
      if (!(alpha0 > 0.0)) throw std::invalid_argument("backtracking: alpha0 must be > 0");
      return;
    default:
      return;
  }
}

AveragingSequences averaging_sequences(const std::vector<double>& steps) {
  AveragingSequences out;
  out.beta.reserve(steps.size() + 1);
  out.alpha.reserve(steps.size());
  out.beta.push_back(1.0);  // empty-product convention
  for (double a : steps) {
    if (!(a >= 0.0) || a >= 1.0) {
      throw std::invalid_argument("averaging_sequences: steps must lie in [0, 1)");
    }
    double b = out.beta.back();
    out.alpha.push_back(b * a / (1.0 - a));
    out.beta.push_back(b / (1.0 - a));
  }
  return out;
}

CurvatureConstant CurvatureConstant::from(const Objective& obj, const FeasibleSet& set,
                                          std::optional<double> override_up) {
  double d = set.diameter();
  double floor = std::max(obj.lipschitz() * d * d, obj.grad_bound(set) * d);
  if (override_up) {
    if (*override_up < floor - 1e-12) {
      throw std::invalid_argument(
          "curvature constant C = " + std::to_string(*override_up) +
          " understates max{L*D^2, G*D} = " + std::to_string(floor) +
          "; the decrease guarantees require C to dominate both");
    }
    return CurvatureConstant{std::max(*override_up, floor)};
  }
  return CurvatureConstant{floor};
}

double IterateTrace::min_gap_exact() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) m = std::min(m, r.gap_exact);
  return m;
}

double IterateTrace::final_f() const { return rows.back().f; }

bool IterateTrace::has_fstar() const { return std::isfinite(f_star); }

double IterateTrace::final_suboptimality() const { return final_f() - f_star; }

namespace {

struct LoopState {
  IterateTrace trace;
  Vec x;
  double beta = 1.0;
  int consecutive_null = 0;
};

LoopState start_run(SolverVariant variant, const Objective& obj, const FeasibleSet& set,
                    const InexactOracle& oracle, const Vec& x0, int k_max) {
  if (k_max < 1) throw std::invalid_argument("solver: k_max must be >= 1");
  if (obj.dim() != set.dim()) throw std::invalid_argument("solver: objective/set dimension mismatch");
  require_dim(x0, set.dim(), "solver x0");
  require_finite(x0, "solver x0");
  if (!set.contains(x0, 1e-9)) throw std::invalid_argument("solver: x0 is not feasible");

  LoopState st;
  st.trace.variant = variant;
  st.trace.rows.reserve(std::size_t(k_max) + 1);
  st.trace.lipschitz = obj.lipschitz();
  st.trace.diameter = set.diameter();
  st.trace.curvature = kNaN;
  st.trace.delta_base = oracle.base_delta();
  st.trace.delta_floor = oracle.delta_floor();
  st.trace.f_star = kNaN;
  st.x = x0;
  return st;
}

IterateRecord point_record(const Objective& obj, const FeasibleSet& set, const Vec& x, int k,
                           double beta) {
  IterateRecord row;
  row.k = k;
  row.x = x;
  row.f = obj.value(x);
  Vec grad = obj.gradient(x);
  row.grad_norm = grad.norm();
  row.gap_exact = grad.dot(x - set.lmo(grad));
  row.beta = beta;
  return row;
}

void finish_run(LoopState& st, const Objective& obj, const FeasibleSet& set,
                const InexactOracle& oracle, int k) {
  IterateRecord row = point_record(obj, set, st.x, k, st.beta);
  ApproxGap ag = fw_gap_approx(oracle, set, st.x, k);
  row.gap_approx = ag.gap;
  row.delta_eff = oracle.effective_delta(st.x, k);
  st.trace.rows.push_back(std::move(row));
}

}  // namespace

IterateTrace solve_convex_fw(const Objective& obj, const FeasibleSet& set,
                             const InexactOracle& oracle, const StepRule& step, const Vec& x0,
                             int k_max, const SolverOptions& /*options*/) {
  step.validate();
  if (step.kind != StepRuleKind::HarmonicTwo && step.kind != StepRuleKind::PowerDecay) {
    throw std::invalid_argument("solve_convex_fw: step rule must be open-loop");
  }
  if (!obj.is_convex()) throw std::invalid_argument("solve_convex_fw: objective is not convex");
  std::optional<double> fstar = obj.known_fstar(set);
  if (!fstar) throw std::invalid_argument("solve_convex_fw: f_star is required");

  LoopState st = start_run(SolverVariant::Convex, obj, set, oracle, x0, k_max);
  st.trace.f_star = *fstar;
  const double ld2 = obj.lipschitz() * set.diameter() * set.diameter();

  for (int k = 0; k < k_max; ++k) {
    ApproxGap ag = fw_gap_approx(oracle, set, st.x, k);
    IterateRecord row = point_record(obj, set, st.x, k, st.beta);
    row.gap_approx = ag.gap;
    row.delta_eff = oracle.effective_delta(st.x, k);

    double a = step.open_loop(k);
    row.alpha_bar = a;
    Vec x_next = st.x + a * (ag.minimizer - st.x);
    double f_next = obj.value(x_next);

    // One-step decrease at level delta_k:
    // f_{k+1} - f* <= (1-a)(f_k - f*) + 2 a delta_k + 1/2 L D^2 a^2.
    row.slack_onestep = (1.0 - a) * (row.f - *fstar) + 2.0 * a * row.delta_eff +
                        0.5 * ld2 * a * a - (f_next - *fstar);

    st.trace.rows.push_back(std::move(row));
    st.x = std::move(x_next);
    st.beta /= (1.0 - a);
  }
  finish_run(st, obj, set, oracle, k_max);
  return std::move(st.trace);
}

namespace {

// Shared body for the two adaptive variants; `relative` switches the error
// level from the additive delta_k to delta * ||grad f(x_k)||.
IterateTrace adaptive_run(SolverVariant variant, const Objective& obj, const FeasibleSet& set,
                          const InexactOracle& oracle, const CurvatureConstant& curvature,
                          double delta, const Vec& x0, int k_max, const SolverOptions& options) {
  if (delta < 0) throw std::invalid_argument("solver: delta must be >= 0");
  const bool relative = variant == SolverVariant::Relative;
  if (relative && oracle.model() != OracleModel::RelativeWorstCase) {
    throw std::invalid_argument("solve_relative_fw: oracle model must be relative");
  }
  if (!relative && oracle.model() == OracleModel::RelativeWorstCase) {
    throw std::invalid_argument("solve_nonconvex_fw: oracle error must be additive");
  }
  double expected = oracle.model() == OracleModel::Exact ? 0.0 : oracle.base_delta();
  if (std::abs(delta - expected) > 0) {
    throw std::invalid_argument("solver: delta does not match the oracle's error level");
  }

  LoopState st = start_run(variant, obj, set, oracle, x0, k_max);
  st.trace.curvature = curvature.value;
  if (auto fs = obj.known_fstar(set)) st.trace.f_star = *fs;
  const double C = curvature.value;

  for (int k = 0; k < k_max; ++k) {
    ApproxGap ag = fw_gap_approx(oracle, set, st.x, k);
    IterateRecord row = point_record(obj, set, st.x, k, st.beta);
    row.gap_approx = ag.gap;
    row.delta_eff = oracle.effective_delta(st.x, k);

    double surplus = positive_part(ag.gap - row.delta_eff);
    double a = surplus / C;
    if (a >= 1.0) {  // cannot happen when C dominates max{LD^2, GD}; flag it
      a = kStepCap;
      row.clamped = true;
      ++st.trace.clamped_steps;
    }
    row.alpha_bar = a;
    row.null_step = (a == 0.0);
    if (row.null_step) {
      ++st.trace.null_steps;
      ++st.consecutive_null;
    } else {
      st.consecutive_null = 0;
    }

    Vec x_next = st.x + a * (ag.minimizer - st.x);
    double f_next = obj.value(x_next);
    // f_{k+1} <= f_k - surplus^2 / (2C)
    row.slack_onestep = row.f - surplus * surplus / (2.0 * C) - f_next;

    st.trace.rows.push_back(std::move(row));
    st.x = std::move(x_next);
    st.beta /= (1.0 - a);

    if (options.early_stop_on_null && st.consecutive_null >= options.null_patience) {
      finish_run(st, obj, set, oracle, k + 1);
      return std::move(st.trace);
    }
  }
  finish_run(st, obj, set, oracle, k_max);
  return std::move(st.trace);
}

}  // namespace

IterateTrace solve_nonconvex_fw(const Objective& obj, const FeasibleSet& set,
                                const InexactOracle& oracle, const CurvatureConstant& curvature,
                                double delta, const Vec& x0, int k_max,
                                const SolverOptions& options) {
  return adaptive_run(SolverVariant::Nonconvex, obj, set, oracle, curvature, delta, x0, k_max,
                      options);
}

IterateTrace solve_relative_fw(const Objective& obj, const FeasibleSet& set,
                               const InexactOracle& oracle, const CurvatureConstant& curvature,
                               double delta, const Vec& x0, int k_max,
                               const SolverOptions& options) {
  return adaptive_run(SolverVariant::Relative, obj, set, oracle, curvature, delta, x0, k_max,
                      options);
}

IterateTrace solve_backtracking_fw(const Objective& obj, const FeasibleSet& set,
                                   const InexactOracle& oracle, double lipschitz, double eta,
                                   double alpha0, const Vec& x0, int k_max,
                                   const SolverOptions& options) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("backtracking: eta must be in (0,1)");
  if (!(alpha0 > 0.0)) throw std::invalid_argument("backtracking: alpha0 must be > 0");
  if (!(lipschitz > 0.0)) throw std::invalid_argument("backtracking: L must be > 0");

  LoopState st = start_run(SolverVariant::Backtracking, obj, set, oracle, x0, k_max);
  st.trace.eta = eta;
  if (auto fs = obj.known_fstar(set)) st.trace.f_star = *fs;
  const double d = set.diameter();
  const double C = std::max(lipschitz * d * d, obj.grad_bound(set) * d);
  st.trace.curvature = C;
  st.trace.lipschitz = lipschitz;  // the user's smoothness model, not the certified one
  constexpr int kMaxShrinks = 60;

  for (int k = 0; k < k_max; ++k) {
    ApproxGap ag = fw_gap_approx(oracle, set, st.x, k);
    IterateRecord row = point_record(obj, set, st.x, k, st.beta);
    row.gap_approx = ag.gap;
    row.delta_eff = oracle.effective_delta(st.x, k);

    double surplus = positive_part(ag.gap - row.delta_eff);
    double accepted = 0.0;
    double f_next = row.f;
    Vec x_next = st.x;

    if (surplus > 0.0) {
      Vec dir = ag.minimizer - st.x;
      double dn2 = dir.squaredNorm();
      // Trials shrink from min(alpha0, surplus/C); the accepted step then
      // certifies a decrease of at least eta * surplus^2 / (2C).
      double a = std::min(alpha0, surplus / C);
      bool ok = false;
      // Rounding guard: the model can be exactly tight (matching quadratics),
      // and a ulp-level rejection would silently shrink the certified decrease.
      const double accept_tol = 4e-12 * (1.0 + std::abs(row.f));
      for (int shrink = 0; shrink <= kMaxShrinks; ++shrink) {
        Vec cand = st.x + a * dir;
        double f_cand = obj.value(cand);
        double model = row.f - a * ag.gap + 0.5 * lipschitz * a * a * dn2;
        if (f_cand <= model + accept_tol) {
          accepted = a;
          f_next = f_cand;
          x_next = std::move(cand);
          ok = true;
          break;
        }
        a *= eta;
      }
      if (!ok) {
        throw StepFailure("backtracking: no step accepted after " + std::to_string(kMaxShrinks) +
                          " shrinks; the supplied L is likely too small");
      }
    } else {
      row.null_step = true;
      ++st.trace.null_steps;
      ++st.consecutive_null;
    }
    if (!row.null_step) st.consecutive_null = 0;

    row.alpha_bar = accepted;
    row.slack_onestep = row.f - eta * surplus * surplus / (2.0 * C) - f_next;

    st.trace.rows.push_back(std::move(row));
    st.x = std::move(x_next);
    st.beta /= (1.0 - std::min(accepted, kStepCap));

    if (options.early_stop_on_null && st.consecutive_null >= options.null_patience) {
      finish_run(st, obj, set, oracle, k + 1);
      return std::move(st.trace);
    }
  }
  finish_run(st, obj, set, oracle, k_max);
  return std::move(st.trace);
}

MarginReport margin_check(const IterateTrace& trace, const FeasibleSet& set, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("margin_check: r must be > 0");
  MarginReport report;
  report.holds = true;
  report.min_distance = std::numeric_limits<double>::infinity();
  report.worst_slack = std::numeric_limits<double>::infinity();
  report.slacks.reserve(trace.rows.size());
  for (const auto& row : trace.rows) {
    double dist = set.distance_to_boundary(row.x);
    report.min_distance = std::min(report.min_distance, dist);
    if (dist < r) report.holds = false;
    double slack = row.gap_exact - r * row.grad_norm;
    report.slacks.push_back(slack);
    report.worst_slack = std::min(report.worst_slack, slack);
  }
  return report;
}

bool traces_identical(const IterateTrace& a, const IterateTrace& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& ra = a.rows[i];
    const auto& rb = b.rows[i];
    if (ra.x != rb.x || ra.f != rb.f || ra.alpha_bar != rb.alpha_bar ||
        ra.gap_exact != rb.gap_exact || ra.gap_approx != rb.gap_approx ||
        ra.grad_norm != rb.grad_norm || ra.slack_onestep != rb.slack_onestep ||
        ra.beta != rb.beta) {
      return false;
    }
  }
  return true;
}

}  // namespace fw
