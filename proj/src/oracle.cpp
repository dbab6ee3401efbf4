#include "fw/oracle.hpp"

#include <cmath>

namespace fw {

InexactOracle::InexactOracle(OracleModel model, Objective obj)
    : model_(model), objective_(std::move(obj)) {}

InexactOracle InexactOracle::exact(Objective obj) {
  return InexactOracle(OracleModel::Exact, std::move(obj));
}

InexactOracle InexactOracle::additive_worst_case(Objective obj, FeasibleSet set, double delta,
                                                 std::uint64_t seed) {
  if (delta < 0) throw std::invalid_argument("oracle: delta must be >= 0");
  InexactOracle o(OracleModel::AdditiveWorstCase, std::move(obj));
  o.diameter_ = set.diameter();
  o.set_ = std::move(set);
  o.delta_ = delta;
  o.seed_ = seed;
  return o;
}

InexactOracle InexactOracle::additive_sign(Objective obj, double delta, double diameter) {
  if (delta < 0) throw std::invalid_argument("oracle: delta must be >= 0");
  if (!(diameter > 0)) throw std::invalid_argument("oracle: diameter must be > 0");
  InexactOracle o(OracleModel::AdditiveSign, std::move(obj));
  o.delta_ = delta;
  o.diameter_ = diameter;
  return o;
}

InexactOracle InexactOracle::additive_scheduled(Objective obj, FeasibleSet set, double delta,
                                                DeltaSchedule schedule, std::uint64_t seed) {
  if (delta < 0) throw std::invalid_argument("oracle: delta must be >= 0");
  InexactOracle o(OracleModel::AdditiveScheduled, std::move(obj));
  o.diameter_ = set.diameter();
  o.set_ = std::move(set);
  o.delta_ = delta;
  o.schedule_ = schedule;
  o.seed_ = seed;
  return o;
}

InexactOracle InexactOracle::relative_worst_case(Objective obj, FeasibleSet set, double delta,
                                                 std::uint64_t seed) {
  if (delta < 0) throw std::invalid_argument("oracle: delta must be >= 0");
  InexactOracle o(OracleModel::RelativeWorstCase, std::move(obj));
  o.diameter_ = set.diameter();
  o.set_ = std::move(set);
  o.delta_ = delta;
  o.seed_ = seed;
  return o;
}

InexactOracle InexactOracle::with_claimed_scale(double scale) const {
  if (!(scale > 0)) throw std::invalid_argument("oracle: claimed scale must be > 0");
  InexactOracle copy = *this;
  copy.claimed_scale_ = scale;
  return copy;
}

double InexactOracle::delta_floor() const {
  switch (model_) {
    case OracleModel::AdditiveWorstCase:
    case OracleModel::AdditiveSign:
      return delta_;
    default:
      return 0.0;
  }
}

double InexactOracle::schedule_level(int k) const {
  const double scale = delta_ * objective_.lipschitz() * diameter_ * diameter_;
  switch (schedule_) {
    case DeltaSchedule::HarmonicLD2: return scale / double(k + 1);
    case DeltaSchedule::InvSqrtLD2:  return scale / std::sqrt(double(k + 1));
  }
  return scale;
}

double InexactOracle::effective_delta(const Vec& x, int k) const {
  double level = 0.0;
  switch (model_) {
    case OracleModel::Exact:
      level = 0.0;
      break;
    case OracleModel::AdditiveWorstCase:
    case OracleModel::AdditiveSign:
      level = delta_;
      break;
    case OracleModel::AdditiveScheduled:
      level = schedule_level(k);
      break;
    case OracleModel::RelativeWorstCase:
      level = delta_ * objective_.gradient(x).norm();
      break;
  }
  return level * claimed_scale_;
}

Vec InexactOracle::adversarial_unit(const Vec& x, const Vec& grad, int k) const {
  // Align the error with the exact descent direction x - lmo(grad f), the
  // orientation that most distorts the apparent progress of the method.
  Vec dir = x - set_->lmo(grad);
  double n = dir.norm();
  if (n > 1e-12) return dir / n;
  Rng rng(mix_seed(seed_, hash_bits(x, std::uint64_t(k) + 1)));
  return rng.unit_vector(x.size());
}

Vec InexactOracle::gradient(const Vec& x, int k) const {
  Vec grad = objective_.gradient(x);
  switch (model_) {
    case OracleModel::Exact:
      return grad;
    case OracleModel::AdditiveSign: {
      Vec s(x.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        s[i] = (x[i] > 0.0) ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
      }
      double n = s.norm();
      if (n == 0.0) return grad;
      return grad - (delta_ / diameter_ / n) * s;
    }
    case OracleModel::AdditiveWorstCase:
      return grad - (delta_ / diameter_) * adversarial_unit(x, grad, k);
    case OracleModel::AdditiveScheduled:
      return grad - (schedule_level(k) / diameter_) * adversarial_unit(x, grad, k);
    case OracleModel::RelativeWorstCase: {
      double gn = grad.norm();
      if (gn == 0.0) return grad;
      return grad - (delta_ * gn / diameter_) * adversarial_unit(x, grad, k);
    }
  }
  return grad;
}

double fw_gap(const Objective& obj, const FeasibleSet& set, const Vec& x) {
  Vec grad = obj.gradient(x);
  return grad.dot(x - set.lmo(grad));
}

ApproxGap fw_gap_approx(const InexactOracle& oracle, const FeasibleSet& set, const Vec& x, int k) {
  Vec g = oracle.gradient(x, k);
  Vec s = set.lmo(g);
  return ApproxGap{g.dot(x - s), std::move(s), std::move(g)};
}

}  // namespace fw
