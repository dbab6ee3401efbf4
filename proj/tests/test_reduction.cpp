#include <cmath>

#include "doctest.h"
#include "fw/reduction.hpp"

using namespace fw;

TEST_CASE("ball query: exact projection of the scaled point is the lmo point") {
  FeasibleSet set = FeasibleSet::l2_ball(3, 1.0);
  Rng rng(5);
  Vec x = rng.unit_vector(3);
  auto [p, rep] = lmo_via_projection(set, x, 0.0, 0.05, 1);
  // projecting -lambda x onto the unit ball lands at -x, the exact minimizer
  CHECK((p - set.lmo(x)).norm() < 1e-12);
  CHECK(rep.pass);
  CHECK(rep.reduced_value - rep.lmo_value == doctest::Approx(0.0).epsilon(1e-12));
  // D = 2, mu = 1: bound (0 + 2 + 2) / lambda
  CHECK(rep.bound_rhs == doctest::Approx(4.0 / rep.lambda));
  CHECK(rep.lambda == doctest::Approx(4.0 / 0.05));

  ChainSlacks cs = verify_reduction_chain(set, x, p, set.lmo(x), rep.lambda, 0.0);
  CHECK(cs.prop2_at_v >= -1e-9);
  CHECK(cs.rearranged >= -1e-9);
  CHECK(cs.cauchy_schwarz >= -1e-9);
  CHECK(cs.final_bound >= -1e-9);
  CHECK(cs.final_bound >= cs.cauchy_schwarz);  // the last line is the weakest
}

TEST_CASE("input validation") {
  FeasibleSet set = FeasibleSet::simplex(3);
  CHECK_THROWS_AS(lmo_via_projection(set, Vec::Zero(3), 0.0, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(lmo_via_projection(set, Vec::Zero(3), -0.5, 0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(lmo_via_projection_lambda(set, Vec::Zero(3), 0.0, 0.0, 1), std::invalid_argument);
}

TEST_CASE("zero query point collapses the chain") {
  FeasibleSet set = FeasibleSet::box(4, -1, 1);
  auto [p, rep] = lmo_via_projection(set, Vec::Zero(4), 0.5, 0.1, 7);
  CHECK(rep.reduced_value == 0.0);
  CHECK(rep.lmo_value == 0.0);
  CHECK(rep.pass);
  ChainSlacks cs = verify_reduction_chain(set, Vec::Zero(4), p, set.lmo(Vec::Zero(4)), rep.lambda, 0.5);
  CHECK(cs.prop2_at_v >= -1e-9);
  CHECK(cs.final_bound >= -1e-9);
}

TEST_CASE("seeded fuzz over sets and slack budgets") {
  Rng rng(99);
  const double eps = 0.05;
  std::vector<FeasibleSet> sets = {FeasibleSet::simplex(5), FeasibleSet::box(4, -1, 1),
                                   FeasibleSet::l2_ball(3, 1.5), FeasibleSet::l1_ball(4, 2.0)};
  for (const auto& set : sets) {
    for (int i = 0; i < 150; ++i) {
      Vec x = rng.gaussian(set.dim());
      double K = (i % 3 == 0) ? 0.0 : (i % 3 == 1 ? 0.1 : 1.0);
      auto [p, rep] = lmo_via_projection(set, x, K, eps, rng.next_u64());
      CHECK(set.contains(p, 1e-9));
      CHECK(rep.pass);
      CHECK(rep.reduced_value - rep.lmo_value >= -1e-9);
      CHECK(rep.reduced_value - rep.lmo_value <= rep.bound_rhs + 1e-9);
      ChainSlacks cs = verify_reduction_chain(set, x, p, set.lmo(x), rep.lambda, K);
      CHECK(cs.prop2_at_v >= -1e-9);
      CHECK(cs.rearranged >= -1e-9);
      CHECK(cs.cauchy_schwarz >= -1e-9);
      CHECK(cs.final_bound >= -1e-9);
    }
  }
}

TEST_CASE("box chain slacks stay nonnegative over a thousand seeds") {
  FeasibleSet set = FeasibleSet::box(4, -1, 1);
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) {
    Vec x = rng.gaussian(4);
    double lambda = 40.0;
    Vec p = set.approx_project(-lambda * x, 0.5, rng.next_u64());
    ChainSlacks cs = verify_reduction_chain(set, x, p, set.lmo(x), lambda, 0.5);
    CHECK(cs.prop2_at_v >= -1e-9);
    CHECK(cs.rearranged >= -1e-9);
    CHECK(cs.cauchy_schwarz >= -1e-9);
    CHECK(cs.final_bound >= -1e-9);
  }
}

TEST_CASE("doubling lambda halves the bound and the value gap stays inside") {
  FeasibleSet set = FeasibleSet::simplex(5);
  Rng rng(31);
  Vec x = rng.gaussian(5);
  double prev = 0.0;
  for (int i = 0; i < 8; ++i) {
    double lambda = 5.0 * std::pow(2.0, i);
    auto [p, rep] = lmo_via_projection_lambda(set, x, 0.25, lambda, 17 + std::uint64_t(i));
    CHECK(rep.reduced_value - rep.lmo_value <= rep.bound_rhs + 1e-9);
    if (i > 0) CHECK(std::abs(prev - 2.0 * rep.bound_rhs) <= 1e-9 * prev);
    prev = rep.bound_rhs;
  }
}
