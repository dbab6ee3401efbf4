#include "doctest.h"
#include "fw/config.hpp"

using namespace fw;

namespace {

const char* kMinimal = R"(
[set]
kind = "interval"
lo = -1.0
hi = 1.0

[objective]
kind = "scalar_square"

[oracle]
model = "additive_sign"
delta = 0.05
seed = 7

[solver]
variant = "convex"
step = "harmonic"
k_max = 100
x0 = [1.0]

[checks]
enabled = ["delta_floor", "convex_one_step"]
)";

}  // namespace

TEST_CASE("config parses, validates, and round-trips") {
  ExperimentConfig c = ExperimentConfig::parse(kMinimal);
  CHECK(c.set.kind == "interval");
  CHECK(c.oracle.delta == doctest::Approx(0.05));
  CHECK(c.solver.k_max == 100);
  CHECK(c.checks.enabled.size() == 2);
  CHECK(c.validate().empty());

  // parse -> serialize -> parse is the identity on the typed config
  ExperimentConfig again = ExperimentConfig::parse(c.to_toml());
  CHECK(again == c);
  ExperimentConfig third = ExperimentConfig::parse(again.to_toml());
  CHECK(third == again);
}

TEST_CASE("parser errors carry line numbers") {
  CHECK_THROWS_WITH_AS(toml::parse("key = 1"), doctest::Contains("line 1"), std::invalid_argument);
  CHECK_THROWS_AS(toml::parse("[s]\nkey 1"), std::invalid_argument);
  CHECK_THROWS_AS(toml::parse("[s]\nk = [1, \"a\"]"), std::invalid_argument);
  CHECK_THROWS_AS(toml::parse("[s\nk = 1"), std::invalid_argument);
  // comments and blank lines are fine
  toml::Document doc = toml::parse("# header\n[s]\nk = 1 # trailing\n\nname = \"x # not a comment\"\n");
  CHECK(toml::get_number(doc, "s", "k") == 1.0);
  CHECK(toml::get_string(doc, "s", "name") == "x # not a comment");
}

TEST_CASE("validation lists every violated rule at once") {
  ExperimentConfig c = ExperimentConfig::parse(kMinimal);
  c.solver.variant = "relative";            // needs the relative oracle
  c.solver.x0 = {2.0};                      // infeasible
  c.checks.enabled = {"delta_floor"};       // convex-only check
  try {
    c.require_valid();
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(e.violations().size() == 3);
  }
}

TEST_CASE("understating the curvature constant is called out by name") {
  ExperimentConfig c = ExperimentConfig::parse(kMinimal);
  c.set.kind = "box";
  c.set.dim = 2;
  c.objective.kind = "quadratic";
  c.objective.diag = {1.0, -1.0};
  c.oracle.model = "additive_worst_case";
  c.oracle.delta = 0.1;
  c.solver.variant = "nonconvex";
  c.solver.x0 = {1.0, 0.1};
  c.solver.c_override = 3.0;  // below max{L D^2, G D} = 8
  c.checks.enabled = {"one_step_decrease"};
  try {
    c.require_valid();
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(e.violations().size() == 1);
    CHECK(e.violations()[0].find("understates max{L*D^2, G*D}") != std::string::npos);
  }
  c.solver.c_override = 9.0;  // upward overrides are allowed
  CHECK(c.validate().empty());
}

TEST_CASE("convex variant requires convexity and a known optimum") {
  ExperimentConfig c = ExperimentConfig::parse(kMinimal);
  c.set.kind = "box";
  c.set.dim = 2;
  c.objective.kind = "quadratic";
  c.objective.diag = {1.0, -1.0};
  c.oracle.model = "exact";
  c.oracle.delta = 0.0;
  c.solver.x0 = {0.0, 0.0};
  c.checks.enabled = {};
  auto violations = c.validate();
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("convex") != std::string::npos);
}

TEST_CASE("unknown names are rejected early") {
  ExperimentConfig c = ExperimentConfig::parse(kMinimal);
  c.set.kind = "torus";
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = ExperimentConfig::parse(kMinimal);
  c.checks.enabled = {"no_such_check"};
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("reduction-only configs skip the solver rules") {
  ExperimentConfig c = ExperimentConfig::parse(R"(
[set]
kind = "simplex"
dim = 5

[reduction]
eps = 0.05
k_slack = 0.1
n_instances = 10
seed = 5
)");
  CHECK(c.validate().empty());
  c.reduction.eps.reset();
  auto violations = c.validate();
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("eps") != std::string::npos);
}

TEST_CASE("built objects match the configured kinds") {
  ExperimentConfig c = ExperimentConfig::parse(kMinimal);
  FeasibleSet set = c.build_set();
  CHECK(set.kind() == SetKind::Interval);
  Objective obj = c.build_objective();
  CHECK(obj.kind() == ObjectiveKind::ScalarSquare);
  InexactOracle oracle = c.build_oracle();
  CHECK(oracle.model() == OracleModel::AdditiveSign);
  CHECK(oracle.base_delta() == doctest::Approx(0.05));
  IterateTrace trace = c.run_solver();
  CHECK(trace.rows.size() == 101);
}
