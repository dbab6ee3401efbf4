#include <cmath>

#include "doctest.h"
#include "fw/checks.hpp"
#include "fw/oracle.hpp"
#include "support.hpp"

using namespace fw;

TEST_CASE("exact gradients by closed form") {
  SUBCASE("scalar square") {
    Objective obj = Objective::scalar_square();
    CHECK(obj.gradient(Vec::Constant(1, 0.5))[0] == doctest::Approx(0.5));
    CHECK(obj.value(Vec::Constant(1, 0.5)) == doctest::Approx(0.125));
  }
  SUBCASE("identity quadratic") {
    Objective obj = Objective::quadratic(Mat::Identity(2, 2), Vec::Zero(2));
    Vec x(2);
    x << 1.0, 2.0;
    CHECK((obj.gradient(x) - x).norm() == doctest::Approx(0.0));
    CHECK(obj.is_convex());
  }
  SUBCASE("indefinite diagonal") {
    Mat A = Mat::Zero(2, 2);
    A(0, 0) = 1.0;
    A(1, 1) = -1.0;
    Objective obj = Objective::quadratic(A, Vec::Zero(2));
    Vec x(2);
    x << 1.0, 1.0;
    Vec g = obj.gradient(x);
    CHECK(g[0] == doctest::Approx(1.0));
    CHECK(g[1] == doctest::Approx(-1.0));
    CHECK_FALSE(obj.is_convex());
    CHECK(obj.lipschitz() == doctest::Approx(1.0));
  }
  SUBCASE("finite differences agree") {
    Vec t(3);
    t << 0.3, -0.2, 0.1;
    Objective obj = Objective::shifted_quadratic(t);
    Vec x(3);
    x << 0.5, 0.1, -0.3;
    CHECK((obj.gradient(x) - fwtest::fd_gradient(obj, x)).norm() < 1e-6);
  }
  SUBCASE("understated L override is rejected") {
    Mat A = Mat::Identity(2, 2) * 3.0;
    CHECK_THROWS_AS(Objective::quadratic(A, Vec::Zero(2), 1.0), std::invalid_argument);
    CHECK(Objective::quadratic(A, Vec::Zero(2), 5.0).lipschitz() == doctest::Approx(5.0));
  }
}

TEST_CASE("sign-biased oracle reproduces the 1-d construction") {
  Objective obj = Objective::scalar_square();
  InexactOracle oracle = InexactOracle::additive_sign(obj, 0.1, 2.0);
  // g(x) = x - (delta / D) sign(x) at x = 0.5
  CHECK(oracle.gradient(Vec::Constant(1, 0.5), 0)[0] == doctest::Approx(0.45).epsilon(1e-14));
  CHECK(oracle.gradient(Vec::Constant(1, -0.5), 0)[0] == doctest::Approx(-0.45).epsilon(1e-14));
  CHECK(oracle.gradient(Vec::Zero(1), 0)[0] == doctest::Approx(0.0));
}

TEST_CASE("oracle error certificates hold on sampled feasible pairs") {
  FeasibleSet set = FeasibleSet::box(3, -1, 1);
  Vec target(3);
  target << 0.3, -0.2, 0.5;
  Objective obj = Objective::shifted_quadratic(target);

  SUBCASE("additive worst case stays within delta") {
    InexactOracle oracle = InexactOracle::additive_worst_case(obj, set, 0.2, 17);
    CheckResult r = check_oracle_certification(oracle, set, 1000, 17);
    CHECK(r.pass);
    // certified error norm is exactly delta / D
    Vec x = set.center();
    Vec err = oracle.gradient(x, 0) - obj.gradient(x);
    CHECK(err.norm() == doctest::Approx(0.2 / set.diameter()).epsilon(1e-12));
  }
  SUBCASE("relative model scales with the gradient norm") {
    InexactOracle oracle = InexactOracle::relative_worst_case(obj, set, 0.25, 17);
    CheckResult r = check_oracle_certification(oracle, set, 1000, 17);
    CHECK(r.pass);
    Vec x(3);
    x << 0.9, 0.9, -0.9;
    Vec err = oracle.gradient(x, 0) - obj.gradient(x);
    CHECK(err.norm() ==
          doctest::Approx(0.25 * obj.gradient(x).norm() / set.diameter()).epsilon(1e-12));
  }
  SUBCASE("scheduled level decays like 1/(k+1)") {
    InexactOracle oracle =
        InexactOracle::additive_scheduled(obj, set, 0.1, DeltaSchedule::HarmonicLD2, 17);
    double d2 = set.diameter() * set.diameter();
    CHECK(oracle.effective_delta(set.center(), 0) == doctest::Approx(0.1 * d2));
    CHECK(oracle.effective_delta(set.center(), 9) == doctest::Approx(0.1 * d2 / 10.0));
    CHECK(oracle.delta_floor() == 0.0);
  }
}

TEST_CASE("gap values and closeness") {
  SUBCASE("stationary point has zero gap") {
    FeasibleSet set = FeasibleSet::box(2, -1, 1);
    Objective obj = Objective::shifted_quadratic(Vec::Zero(2));
    CHECK(fw_gap(obj, set, Vec::Zero(2)) == doctest::Approx(0.0));
  }
  SUBCASE("hand-evaluated interval gap") {
    // grad = 0.5, lmo(0.5) = -1, gap = 0.5 * (0.5 - (-1)) = 0.75
    FeasibleSet set = FeasibleSet::interval(-1, 1);
    Objective obj = Objective::scalar_square();
    CHECK(fw_gap(obj, set, Vec::Constant(1, 0.5)) == doctest::Approx(0.75).epsilon(1e-14));
  }
  SUBCASE("uniform gradient on the simplex has zero gap at the barycenter") {
    FeasibleSet set = FeasibleSet::simplex(3);
    Objective obj = Objective::quadratic(Mat::Identity(3, 3), Vec::Zero(3));
    Vec x = set.center();
    CHECK(fw_gap(obj, set, x) == doctest::Approx(0.0).epsilon(1e-15));
    // brute force over the vertices agrees
    double vmin = fwtest::vertex_min(set.vertices(), obj.gradient(x));
    CHECK(obj.gradient(x).dot(x) - vmin == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("exact model reproduces the exact gap") {
    FeasibleSet set = FeasibleSet::interval(-1, 1);
    Objective obj = Objective::scalar_square();
    InexactOracle oracle = InexactOracle::exact(obj);
    ApproxGap ag = fw_gap_approx(oracle, set, Vec::Constant(1, 0.5), 0);
    CHECK(ag.gap == doctest::Approx(0.75));
  }
  SUBCASE("additive and relative closeness bounds") {
    FeasibleSet set = FeasibleSet::box(3, -1, 1);
    Vec target(3);
    target << 0.3, -0.2, 0.5;
    Objective obj = Objective::shifted_quadratic(target);
    CHECK(check_gap_closeness(InexactOracle::additive_worst_case(obj, set, 0.15, 3), set, 1000, 3)
              .pass);
    CHECK(check_gap_closeness(InexactOracle::relative_worst_case(obj, set, 0.15, 3), set, 1000, 3)
              .pass);
  }
}

TEST_CASE("subproblem transfer within twice the error level") {
  FeasibleSet set = FeasibleSet::simplex(4);
  Vec target = Vec::Constant(4, 0.25);
  Objective obj = Objective::shifted_quadratic(target);
  for (double delta : {0.05, 0.2}) {
    CHECK(check_lmo_transfer(InexactOracle::additive_worst_case(obj, set, delta, 9), set, 1000, 9)
              .pass);
  }
  CHECK(check_lmo_transfer(InexactOracle::relative_worst_case(obj, set, 0.2, 9), set, 1000, 9).pass);
  CHECK(check_lmo_transfer(InexactOracle::exact(obj), set, 200, 9).pass);
}

TEST_CASE("convex lower-bound transfer") {
  FeasibleSet set = FeasibleSet::interval(-1, 1);
  Objective obj = Objective::scalar_square();
  InexactOracle oracle = InexactOracle::additive_sign(obj, 0.1, set.diameter());
  CHECK(check_convex_lower_bound(oracle, set, 0.0, 1000, 4).pass);
}

TEST_CASE("grad bound dominates sampled gradients") {
  Rng rng(23);
  FeasibleSet set = FeasibleSet::l1_ball(4, 2.0);
  Mat A = Mat::Zero(4, 4);
  A.diagonal() << 1.0, -0.5, 2.0, 0.0;
  Vec b(4);
  b << 0.1, -0.2, 0.0, 0.3;
  Objective obj = Objective::quadratic(A, b);
  double bound = obj.grad_bound(set);
  for (int i = 0; i < 2000; ++i) {
    CHECK(obj.gradient(set.random_point(rng)).norm() <= bound + 1e-9);
  }
}

TEST_CASE("negative control: an oracle claiming less error than it injects is caught") {
  FeasibleSet set = FeasibleSet::interval(-1, 1);
  Objective obj = Objective::scalar_square();
  InexactOracle honest = InexactOracle::additive_sign(obj, 0.2, set.diameter());
  InexactOracle corrupted = honest.with_claimed_scale(0.25);

  CHECK(check_oracle_certification(honest, set, 500, 8).pass);
  CheckResult cert = check_oracle_certification(corrupted, set, 500, 8);
  CheckResult lower = check_convex_lower_bound(corrupted, set, 0.0, 500, 8);
  bool caught = !cert.pass || !lower.pass;
  CHECK(caught);
  CHECK(cert.name == "oracle_certification");
  CHECK(lower.name == "convex_lower_bound");
}
