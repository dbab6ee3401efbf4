#pragma once

#include <utility>

#include "fw/geometry.hpp"
#include "fw/vec.hpp"

namespace fw {

/// Outcome of answering an LMO query through one K-approximate projection of
/// the scaled point -lambda * x. The value gap <p', x> - <v, x> is sandwiched
/// in [0, (K + D^2/2 + mu*D) / lambda].
struct ReductionReport {
  double lambda = 0.0;
  double slack_k = 0.0;      // projection slack budget K
  double eps_target = 0.0;   // requested LMO accuracy
  double lmo_value = 0.0;    // <v, x> at the exact LMO point
  double reduced_value = 0.0;  // <p', x>
  double bound_rhs = 0.0;    // (K + D^2/2 + mu*D) / lambda
  bool pass = false;         // reduced_value <= lmo_value + eps_target + 1e-9
};

/// Answers the LMO query at x to accuracy eps using a single K-approximate
/// projection, with lambda = (K + D^2/2 + mu*D) / eps (the smallest scaling
/// that makes the bound equal eps).
std::pair<Vec, ReductionReport> lmo_via_projection(const FeasibleSet& set, const Vec& x, double K,
                                                   double eps, std::uint64_t seed = 0);

/// Same construction with lambda chosen directly; eps_target is then the
/// bound value the chosen lambda buys.
std::pair<Vec, ReductionReport> lmo_via_projection_lambda(const FeasibleSet& set, const Vec& x,
                                                          double K, double lambda,
                                                          std::uint64_t seed = 0);

/// Per-line slack of the chain of inequalities behind the sandwich, each of
/// which must be >= 0 (up to rounding) when p' is a genuine K-approximate
/// projection of -lambda x and v an exact LMO point:
///   prop2_at_v:     <v - p', -lambda x - p'> <= K + 1/2 ||v - p'||^2
///   rearranged:     lambda(<p',x> - <v,x>) <= K + 1/2 ||v-p'||^2 + <p', v-p'>
///   cauchy_schwarz: <p', v - p'> <= ||p'|| ||v - p'||
///   final_bound:    lambda(<p',x> - <v,x>) <= K + 1/2 D^2 + mu D
struct ChainSlacks {
  double prop2_at_v = 0.0;
  double rearranged = 0.0;
  double cauchy_schwarz = 0.0;
  double final_bound = 0.0;
};

ChainSlacks verify_reduction_chain(const FeasibleSet& set, const Vec& x, const Vec& p_prime,
                                   const Vec& v, double lambda, double K);

}  // namespace fw
