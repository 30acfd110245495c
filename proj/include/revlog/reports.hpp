#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "revlog/solver.hpp"
#include "revlog/stochastic.hpp"

namespace revlog {

/// Solution document as pretty-printed JSON: objective terms, the chosen
/// design, per-node prices, and per-scenario losses with shipment plans.
/// Key order is fixed, so equal inputs render byte-identically.
std::string solution_document(const Instance& inst, const RiskParams& params,
                              const Solution& solution);

/// As above for a stochastic-metrics report (mrrp / mrev / mrvss).
std::string stochastic_document(const Instance& inst, const RiskParams& params,
                                const StochasticReport& report);

struct SweepCell {
  RiskParams params;
  StochasticReport report;  // report.solution is the cell's solution
};

struct SweepResult {
  std::vector<SweepCell> cells;  // sorted by alpha, then lambda
};

/// Solves every (alpha, lambda) pair and computes its stochastic metrics.
/// Duplicate grid values collapse; cells may be computed concurrently, the
/// assembled result does not depend on the thread count.
SweepResult run_sweep(const Instance& inst, std::vector<double> alphas,
                      std::vector<double> lambdas,
                      const SolverConfig& config = {});

/// One row per cell: design summary, risk figures, and per-node prices.
std::string sweep_table_csv(const Instance& inst, const SweepResult& sweep);

/// Long-format objective values: alpha,lambda,objective.
std::string objective_long_csv(const SweepResult& sweep);

/// Long-format metrics: alpha,lambda,mrrp,mrev,mrvss.
std::string stochastic_metrics_csv(const SweepResult& sweep);

struct CheckResult {
  struct CvarProbe {
    std::size_t distributions = 0;
    double max_deviation = 0.0;   // grid minimum minus closed form
    double max_allowed = 0.0;     // step / (1 - alpha), worst case probed
    bool passed = false;
  };
  struct MicroRow {
    std::size_t index = 0;
    double solver_objective = 0.0;
    double grid_objective = 0.0;
    double deviation = 0.0;  // solver minus grid
    double allowed = 0.0;    // grid gap bound for the upward direction
    bool passed = false;
  };
  CvarProbe cvar;
  std::vector<MicroRow> micros;
  bool passed = false;
};

/// Cross-checks the library against the independent oracles: the closed-form
/// CVaR against its grid minimization on random distributions, and the solver
/// against exhaustive grid search on the bundled micro-instances (plus an
/// optional caller-supplied instance).
CheckResult run_check(double grid_step, std::size_t budget, std::uint64_t seed,
                      const Instance* extra = nullptr,
                      const SolverConfig& config = {});

std::string check_report(const CheckResult& result);

}  // namespace revlog
