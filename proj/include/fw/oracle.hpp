#pragma once

#include <optional>

#include "fw/geometry.hpp"
#include "fw/objective.hpp"
#include "fw/vec.hpp"

namespace fw {

enum class OracleModel {
  Exact,
  AdditiveWorstCase,
  AdditiveSign,
  AdditiveScheduled,
  RelativeWorstCase,
};

enum class DeltaSchedule { HarmonicLD2, InvSqrtLD2 };

/// Gradient oracle g(x) = grad f(x) + e with a construction-time certificate:
/// the error always satisfies ||e|| <= level / D, so |<e, x - y>| <= level
/// for every feasible y. Additive models use level = delta (or a k-dependent
/// schedule); the relative model scales level with ||grad f(x)||. Stateless:
/// the output depends only on (x, k, seed).
class InexactOracle {
 public:
  static InexactOracle exact(Objective obj);
  static InexactOracle additive_worst_case(Objective obj, FeasibleSet set, double delta,
                                           std::uint64_t seed);
  static InexactOracle additive_sign(Objective obj, double delta, double diameter);
  static InexactOracle additive_scheduled(Objective obj, FeasibleSet set, double delta,
                                          DeltaSchedule schedule, std::uint64_t seed);
  static InexactOracle relative_worst_case(Objective obj, FeasibleSet set, double delta,
                                           std::uint64_t seed);

  OracleModel model() const { return model_; }
  const Objective& objective() const { return objective_; }
  double base_delta() const { return delta_; }
  std::uint64_t seed() const { return seed_; }

  /// Asymptotic additive error level: delta for the constant additive
  /// models, 0 for exact / scheduled / relative.
  double delta_floor() const;

  /// Certified directional error bound for the query (x, k): the value D
  /// such that |<g(x) - grad f(x), x - y>| <= D for all feasible y.
  double effective_delta(const Vec& x, int k) const;

  Vec gradient(const Vec& x, int k) const;

  /// Diagnostics hook: report a scaled-down certificate while injecting the
  /// full error. Used by negative-control tests of the verification suite.
  InexactOracle with_claimed_scale(double scale) const;
  double claimed_scale() const { return claimed_scale_; }

 private:
  InexactOracle(OracleModel model, Objective obj);

  Vec adversarial_unit(const Vec& x, const Vec& grad, int k) const;
  double schedule_level(int k) const;

  OracleModel model_;
  Objective objective_;
  std::optional<FeasibleSet> set_;  // models that need an LMO for the error direction
  double delta_ = 0.0;
  double diameter_ = 0.0;
  DeltaSchedule schedule_ = DeltaSchedule::HarmonicLD2;
  std::uint64_t seed_ = 0;
  double claimed_scale_ = 1.0;
};

/// Exact Frank-Wolfe gap <grad f(x), x - lmo(grad f(x))> (nonnegative).
double fw_gap(const Objective& obj, const FeasibleSet& set, const Vec& x);

struct ApproxGap {
  double gap;     // <g, x - s>; may be negative when the error dominates
  Vec minimizer;  // s = lmo(g)
  Vec g;          // oracle output
};

ApproxGap fw_gap_approx(const InexactOracle& oracle, const FeasibleSet& set, const Vec& x, int k);

}  // namespace fw
