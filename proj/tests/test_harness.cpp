#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fw/harness.hpp"
#include "fw/trace_io.hpp"

using namespace fw;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("fwlab_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(bool(in));
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ExperimentConfig interval_config() {
  return ExperimentConfig::parse(R"(
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
k_max = 400
x0 = [1.0]

[checks]
enabled = ["delta_floor", "convex_one_step", "telescoping", "weighted_recursion", "feasibility"]

[output]
csv = "trace.csv"
json = "verdict.json"
)");
}

}  // namespace

TEST_CASE("run writes the versioned trace and the verdict") {
  TempDir dir;
  RunOutcome outcome = run_experiment(interval_config(), dir.path.string());
  CHECK(outcome.all_pass);
  CHECK(outcome.checks.size() == 5);

  std::string csv = slurp(dir.path / "trace.csv");
  CHECK(csv.rfind("# fw-trace v1\nk,f,gap_exact,gap_approx,step,grad_norm,slack_onestep,beta\n", 0) == 0);
  // one row per iterate: k_max + 1 points plus two header lines
  int lines = 0;
  for (char ch : csv) lines += (ch == '\n');
  CHECK(lines == 403);

  nlohmann::json verdict = nlohmann::json::parse(slurp(dir.path / "verdict.json"));
  CHECK(verdict["all_pass"] == true);
  CHECK(verdict["checks"].size() == 5);
  CHECK(verdict["summary"]["final_suboptimality"].get<double>() <= 0.11);
  for (const auto& c : verdict["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("lhs"));
    CHECK(c.contains("rhs"));
    CHECK(c.contains("slack"));
    CHECK(c.contains("pass"));
  }
}

TEST_CASE("delta sweep: suboptimality is monotone and under the floor") {
  TempDir dir;
  SweepOutcome sweep = run_sweep(interval_config(), "delta",
                                 {"0.01", "0.02", "0.04", "0.08", "0.16", "0.32"},
                                 dir.path.string());
  CHECK(sweep.all_pass);
  REQUIRE(sweep.points.size() == 6);
  double prev = -1.0;
  double delta = 0.01;
  for (const auto& p : sweep.points) {
    CHECK(p.final_suboptimality >= prev - 1e-12);
    CHECK(p.final_suboptimality <= 2.0 * delta + 0.01);
    prev = p.final_suboptimality;
    delta *= 2.0;
  }
  REQUIRE(sweep.delta_slope.has_value());
  CHECK(*sweep.delta_slope <= 2.0 + 1e-6);
  CHECK(std::filesystem::exists(dir.path / "sweep_delta.csv"));
  CHECK(std::filesystem::exists(dir.path / "sweep_delta.json"));
}

TEST_CASE("lambda sweep scales the reduction bound as 1/lambda") {
  TempDir dir;
  ExperimentConfig config = ExperimentConfig::parse(R"(
[set]
kind = "simplex"
dim = 5

[reduction]
eps = 0.05
k_slack = 0.1
n_instances = 20
seed = 5
)");
  SweepOutcome sweep = run_sweep(config, "lambda", {"10", "100", "1000"}, dir.path.string());
  CHECK(sweep.all_pass);
  REQUIRE(sweep.points.size() == 3);
  // bound column scales exactly as 1/lambda; the realized gap stays below it
  CHECK(sweep.points[0].final_f == doctest::Approx(10.0 * sweep.points[1].final_f).epsilon(1e-9));
  CHECK(sweep.points[1].final_f == doctest::Approx(10.0 * sweep.points[2].final_f).epsilon(1e-9));
  for (const auto& p : sweep.points) CHECK(p.min_gap <= p.final_f + 1e-9);
}

TEST_CASE("unknown sweep parameters are rejected") {
  TempDir dir;
  CHECK_THROWS_AS(run_sweep(interval_config(), "gamma", {"1"}, dir.path.string()),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_sweep(interval_config(), "lambda", {"1"}, dir.path.string()),
                  std::invalid_argument);  // no [reduction] section
}

TEST_CASE("reduce runs seeded instances and reports the bound") {
  TempDir dir;
  ExperimentConfig config = ExperimentConfig::parse(R"(
[set]
kind = "box"
dim = 4
lo = -1.0
hi = 1.0

[reduction]
eps = 0.05
k_slack = 0.5
n_instances = 50
seed = 9

[output]
csv = "reports.csv"
json = "reduce.json"
)");
  ReduceOutcome outcome = run_reduce(config, dir.path.string());
  CHECK(outcome.all_pass);
  CHECK(outcome.reports.size() == 50);
  for (const auto& rep : outcome.reports) {
    CHECK(rep.reduced_value - rep.lmo_value <= 0.05 + 1e-9);
  }
  CHECK(slurp(dir.path / "reports.csv").rfind("# fw-reduce v1", 0) == 0);
}

TEST_CASE("verify is deterministic across seeds") {
  TempDir dir;
  // reduced sample volumes keep this quick; the pass set must not depend on
  // the seed
  std::vector<std::string> baseline;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    VerifyOutcome outcome = run_verify(seed, dir.path.string(), 0.05);
    std::vector<std::string> names;
    for (const auto& c : outcome.checks) {
      if (c.pass) names.push_back(c.name);
    }
    CHECK(outcome.all_pass);
    if (seed == 0) {
      baseline = names;
    } else {
      CHECK(names == baseline);
    }
  }
}

TEST_CASE("output directory resolution prefers the explicit override") {
  CHECK(resolve_output_dir("/tmp/explicit") == "/tmp/explicit");
  ::setenv("FW_OUTPUT_DIR", "/tmp/from_env", 1);
  CHECK(resolve_output_dir("") == "/tmp/from_env");
  ::unsetenv("FW_OUTPUT_DIR");
  CHECK(resolve_output_dir("") == ".");
}
