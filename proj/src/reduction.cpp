#include "fw/reduction.hpp"

#include <cmath>

namespace fw {

namespace {

ReductionReport build_report(const FeasibleSet& set, const Vec& x, const Vec& p_prime, double K,
                             double lambda, double eps_target) {
  auto [d, mu] = set_constants(set);
  ReductionReport rep;
  rep.lambda = lambda;
  rep.slack_k = K;
  rep.eps_target = eps_target;
  rep.lmo_value = x.dot(set.lmo(x));
  rep.reduced_value = x.dot(p_prime);
  rep.bound_rhs = (K + 0.5 * d * d + mu * d) / lambda;
  rep.pass = rep.reduced_value <= rep.lmo_value + eps_target + 1e-9;
  return rep;
}

}  // namespace

std::pair<Vec, ReductionReport> lmo_via_projection(const FeasibleSet& set, const Vec& x, double K,
                                                   double eps, std::uint64_t seed) {
  if (!(eps > 0.0)) throw std::invalid_argument("lmo_via_projection: eps must be > 0");
  if (K < 0.0) throw std::invalid_argument("lmo_via_projection: K must be >= 0");
  require_dim(x, set.dim(), "lmo_via_projection");
  require_finite(x, "lmo_via_projection");
  auto [d, mu] = set_constants(set);
  double lambda = (K + 0.5 * d * d + mu * d) / eps;
  Vec p = set.approx_project(-lambda * x, K, seed);
  return {p, build_report(set, x, p, K, lambda, eps)};
}

std::pair<Vec, ReductionReport> lmo_via_projection_lambda(const FeasibleSet& set, const Vec& x,
                                                          double K, double lambda,
                                                          std::uint64_t seed) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lmo_via_projection: lambda must be > 0");
  if (K < 0.0) throw std::invalid_argument("lmo_via_projection: K must be >= 0");
  require_dim(x, set.dim(), "lmo_via_projection");
  require_finite(x, "lmo_via_projection");
  auto [d, mu] = set_constants(set);
  double eps_target = (K + 0.5 * d * d + mu * d) / lambda;
  Vec p = set.approx_project(-lambda * x, K, seed);
  return {p, build_report(set, x, p, K, lambda, eps_target)};
}

ChainSlacks verify_reduction_chain(const FeasibleSet& set, const Vec& x, const Vec& p_prime,
                                   const Vec& v, double lambda, double K) {
  auto [d, mu] = set_constants(set);
  Vec diff = v - p_prime;
  double value_gap = p_prime.dot(x) - v.dot(x);

  ChainSlacks s;
  s.prop2_at_v = K + 0.5 * diff.squaredNorm() - diff.dot(-lambda * x - p_prime);
  s.rearranged = K + 0.5 * diff.squaredNorm() + p_prime.dot(diff) - lambda * value_gap;
  s.cauchy_schwarz = p_prime.norm() * diff.norm() - p_prime.dot(diff);
  s.final_bound = K + 0.5 * d * d + mu * d - lambda * value_gap;
  return s;
}

}  // namespace fw
