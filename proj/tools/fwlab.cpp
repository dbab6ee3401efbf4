#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fw/harness.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_checks(const std::vector<fw::CheckResult>& checks) {
  for (const auto& c : checks) {
    std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name << "  slack=" << c.slack;
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fwlab: projection-free solvers with inexact gradient oracles, "
               "plus a bound-verification harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir, param, values_csv;
  std::uint64_t seed = 0;

  auto* run = app.add_subcommand("run", "run one configured experiment and its checks");
  run->add_option("config", config_path, "experiment config file")->required();
  run->add_option("--out-dir", out_dir, "output directory (default: FW_OUTPUT_DIR or .)");

  auto* sweep = app.add_subcommand("sweep", "re-run a config across parameter values");
  sweep->add_option("config", config_path, "experiment config file")->required();
  sweep->add_option("--param", param, "delta | k_max | step | lambda | eps")->required();
  sweep->add_option("--values", values_csv, "comma-separated values")->required();
  sweep->add_option("--out-dir", out_dir, "output directory");

  auto* verify = app.add_subcommand("verify", "run the full invariant suite");
  verify->add_option("--seed", seed, "seed for the sampled checks");
  verify->add_option("--out-dir", out_dir, "output directory");

  auto* reduce = app.add_subcommand("reduce", "answer LMO queries through approximate projection");
  reduce->add_option("config", config_path, "config with a [reduction] section")->required();
  reduce->add_option("--out-dir", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);
  const std::string dir = fw::resolve_output_dir(out_dir);

  try {
    if (run->parsed()) {
      fw::ExperimentConfig config = fw::ExperimentConfig::load(config_path);
      fw::RunOutcome outcome = fw::run_experiment(config, dir);
      print_checks(outcome.checks);
      std::cout << (outcome.all_pass ? "all checks passed" : "CHECKS FAILED") << "\n";
      return outcome.all_pass ? 0 : 1;
    }
    if (sweep->parsed()) {
      fw::ExperimentConfig config = fw::ExperimentConfig::load(config_path);
      fw::SweepOutcome outcome = fw::run_sweep(config, param, split_csv(values_csv), dir);
      for (const auto& p : outcome.points) {
        std::cout << param << "=" << p.value << "  min_gap=" << p.min_gap
                  << "  final_subopt=" << p.final_suboptimality
                  << (p.all_pass ? "  pass" : "  FAIL") << "\n";
      }
      if (outcome.loglog_slope) std::cout << "log-log slope: " << *outcome.loglog_slope << "\n";
      if (outcome.delta_slope) std::cout << "suboptimality/delta slope: " << *outcome.delta_slope << "\n";
      return outcome.all_pass ? 0 : 1;
    }
    if (verify->parsed()) {
      fw::VerifyOutcome outcome = fw::run_verify(seed, dir);
      print_checks(outcome.checks);
      std::cout << (outcome.all_pass ? "all checks passed" : "CHECKS FAILED") << " ("
                << outcome.verdict["elapsed_seconds"].get<double>() << " s)\n";
      return outcome.all_pass ? 0 : 1;
    }
    if (reduce->parsed()) {
      fw::ExperimentConfig config = fw::ExperimentConfig::load(config_path);
      fw::ReduceOutcome outcome = fw::run_reduce(config, dir);
      std::cout << outcome.reports.size() << " instances, "
                << (outcome.all_pass ? "all within bound" : "BOUND VIOLATED") << "\n";
      return outcome.all_pass ? 0 : 1;
    }
  } catch (const fw::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
