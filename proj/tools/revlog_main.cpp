// revlog: solve, sweep, and cross-check risk-averse reverse-logistics
// network designs. Exit codes: 0 success, 1 usage, 2 invalid input or
// infeasible model, 3 oracle budget refusal, 4 failed check.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "revlog/oracle.hpp"
#include "revlog/reports.hpp"

namespace {

revlog::Instance load_realized(const std::string& path,
                               const std::string& mode, std::uint64_t seed) {
  const revlog::Instance raw = revlog::load_instance(path);
  const auto m = mode == "sample" ? revlog::ScenarioMode::sample
                                  : revlog::ScenarioMode::midpoint;
  return revlog::realize(raw, m, seed);
}

void write_or_print(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
  out << text;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"risk-averse reverse-logistics network design"};
  app.require_subcommand(1);

  std::string instance_path, out_path, out_dir = ".";
  std::string mode = "midpoint";
  double alpha = 0.0, lambda = 0.0;
  std::uint64_t seed = 42;
  std::vector<double> alphas, lambdas;
  double grid_step = 0.01;
  std::size_t budget = 100'000'000;
  std::string check_instance_path;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--instance", instance_path, "instance JSON file")
        ->required();
    cmd->add_option("--scenario-mode", mode,
                    "how to realize scenario ranges: midpoint or sample")
        ->check(CLI::IsMember({"midpoint", "sample"}));
    cmd->add_option("--seed", seed, "seed for sampled scenario realization");
  };
  const auto add_risk = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "CVaR confidence level, in [0,1)")
        ->required();
    cmd->add_option("--lambda", lambda, "risk weight, >= 0")->required();
  };

  CLI::App* cmd_solve = app.add_subcommand("solve", "solve one instance");
  add_common(cmd_solve);
  add_risk(cmd_solve);
  cmd_solve->add_option("--out", out_path, "write the solution JSON here");

  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "solve a grid of (alpha, lambda) pairs");
  add_common(cmd_sweep);
  cmd_sweep->add_option("--alphas", alphas, "comma-separated alpha values")
      ->required()
      ->delimiter(',');
  cmd_sweep->add_option("--lambdas", lambdas, "comma-separated lambda values")
      ->required()
      ->delimiter(',');
  cmd_sweep->add_option("--out-dir", out_dir, "directory for the CSV files");

  CLI::App* cmd_eval =
      app.add_subcommand("eval", "stochastic-solution metrics (mrrp/mrev/mrvss)");
  add_common(cmd_eval);
  add_risk(cmd_eval);
  cmd_eval->add_option("--out", out_path, "write the metrics JSON here");

  CLI::App* cmd_check =
      app.add_subcommand("check", "cross-check the solver against its oracles");
  cmd_check->add_option("--grid-step", grid_step,
                        "grid spacing for the oracle searches");
  cmd_check->add_option("--budget", budget,
                        "maximum oracle evaluations per instance");
  cmd_check->add_option("--seed", seed, "seed for the random distributions");
  cmd_check->add_option("--instance", check_instance_path,
                        "also check this instance against the grid oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n"
              << "run with --help for usage" << "\n";
    return 1;
  }

  try {
    if (cmd_solve->parsed()) {
      const revlog::Instance inst = load_realized(instance_path, mode, seed);
      const revlog::RiskParams params{alpha, lambda};
      const revlog::Solution solution = revlog::solve(inst, params);
      write_or_print(out_path, revlog::solution_document(inst, params, solution));
    } else if (cmd_sweep->parsed()) {
      const revlog::Instance inst = load_realized(instance_path, mode, seed);
      const revlog::SweepResult sweep = revlog::run_sweep(inst, alphas, lambdas);
      const std::filesystem::path dir(out_dir);
      std::filesystem::create_directories(dir);
      write_file(dir / "sweep_table.csv", revlog::sweep_table_csv(inst, sweep));
      write_file(dir / "objective_long.csv", revlog::objective_long_csv(sweep));
      write_file(dir / "stochastic_metrics.csv",
                 revlog::stochastic_metrics_csv(sweep));
    } else if (cmd_eval->parsed()) {
      const revlog::Instance inst = load_realized(instance_path, mode, seed);
      const revlog::RiskParams params{alpha, lambda};
      const revlog::StochasticReport report = revlog::compute_mrvss(inst, params);
      write_or_print(out_path,
                     revlog::stochastic_document(inst, params, report));
    } else if (cmd_check->parsed()) {
      revlog::Instance extra;
      const bool has_extra = !check_instance_path.empty();
      if (has_extra)
        extra = revlog::realize(revlog::load_instance(check_instance_path),
                                revlog::ScenarioMode::midpoint, seed);
      const revlog::CheckResult result = revlog::run_check(
          grid_step, budget, seed, has_extra ? &extra : nullptr);
      std::cout << revlog::check_report(result);
      if (!result.passed) return 4;
    }
  } catch (const revlog::oracle::BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const revlog::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const revlog::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
