#include <cmath>

#include "doctest.h"
#include "fw/solver.hpp"

using namespace fw;

TEST_CASE("averaging sequences follow the product conventions") {
  SUBCASE("all-zero steps") {
    AveragingSequences s = averaging_sequences({0.0, 0.0, 0.0});
    for (double b : s.beta) CHECK(b == 1.0);
    for (double a : s.alpha) CHECK(a == 0.0);
  }
  SUBCASE("a step of one is rejected (division by zero in the product)") {
    CHECK_THROWS_AS(averaging_sequences({0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(averaging_sequences({-0.1}), std::invalid_argument);
  }
  SUBCASE("harmonic steps have the closed form beta_k = (k+1)(k+2)/2") {
    StepRule rule = StepRule::harmonic_two();
    std::vector<double> steps;
    for (int k = 0; k <= 50; ++k) steps.push_back(rule.open_loop(k));
    AveragingSequences s = averaging_sequences(steps);
    for (int k = 0; k <= 51; ++k) {
      double expected = double(k + 1) * double(k + 2) / 2.0;
      CHECK(s.beta[std::size_t(k)] == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  SUBCASE("increment identity beta_{k+1} - beta_k = a_k beta_{k+1}") {
    Rng rng(3);
    std::vector<double> steps;
    for (int k = 0; k < 200; ++k) steps.push_back(rng.uniform(0.0, 0.95));
    AveragingSequences s = averaging_sequences(steps);
    for (std::size_t k = 0; k < steps.size(); ++k) {
      double lhs = s.beta[k + 1] - s.beta[k];
      double rhs = steps[k] * s.beta[k + 1];
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, s.beta[k + 1]));
      // alpha_k equals the same increment
      CHECK(std::abs(s.alpha[k] - rhs) <= 1e-9 * std::max(1.0, rhs));
    }
  }
  SUBCASE("increments telescope to beta_{k+1} - 1") {
    StepRule rule = StepRule::power_decay(0.75);
    std::vector<double> steps;
    for (int k = 0; k < 300; ++k) steps.push_back(rule.open_loop(k));
    AveragingSequences s = averaging_sequences(steps);
    double sum = 0.0;
    for (std::size_t k = 0; k < steps.size(); ++k) {
      sum += s.beta[k + 1] - s.beta[k];
      CHECK(std::abs(sum - (s.beta[k + 1] - 1.0)) <= 1e-9 * s.beta[k + 1]);
    }
  }
}

TEST_CASE("step rules emit values in [0, 1) and validate their exponents") {
  StepRule h = StepRule::harmonic_two();
  for (int k = 0; k < 1000; ++k) {
    double a = h.open_loop(k);
    CHECK(a >= 0.0);
    CHECK(a < 1.0);
  }
  CHECK(h.open_loop(0) == doctest::Approx(2.0 / 3.0));

  StepRule p = StepRule::power_decay(0.6);
  p.validate();
  for (int k = 0; k < 1000; ++k) CHECK(p.open_loop(k) < 1.0);
  CHECK_THROWS_AS(StepRule::power_decay(0.5).validate(), std::invalid_argument);
  CHECK_THROWS_AS(StepRule::power_decay(1.5).validate(), std::invalid_argument);
  CHECK_THROWS_AS(StepRule::backtracking(1.0, 1.0).validate(), std::invalid_argument);
}

TEST_CASE("curvature constant dominates both products") {
  FeasibleSet set = FeasibleSet::box(2, -1, 1);
  Mat A = Mat::Zero(2, 2);
  A(0, 0) = 1.0;
  A(1, 1) = -1.0;
  Objective obj = Objective::quadratic(A, Vec::Zero(2));
  // L = 1, D = 2 sqrt 2, G = sqrt 2 at the corners: C = max{8, 4} = 8
  CHECK(CurvatureConstant::from(obj, set).value == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(CurvatureConstant::from(obj, set, 10.0).value == doctest::Approx(10.0));
  CHECK_THROWS_AS(CurvatureConstant::from(obj, set, 3.0), std::invalid_argument);
}
