#pragma once

#include "revlog/instance.hpp"
#include "revlog/risk.hpp"
#include "revlog/solver.hpp"

namespace revlog {

/// The deterministic counterpart of a stochastic instance: one scenario with
/// probability 1 whose per-node quantity is the probability-weighted mean
/// over scenarios. Single-scenario instances pass through unchanged.
Instance expected_value_instance(const Instance& inst);

struct StochasticReport {
  double mrrp = 0.0;   // optimal mean-risk objective of the stochastic model
  double mrev = 0.0;   // the EV solution evaluated against all scenarios
  double mrvss = 0.0;  // mrrp - mrev
  bool ev_repaired = false;  // EV solution violated capacity; flows rescaled
  Solution solution;         // the stochastic model's optimum (source of mrrp)
  Solution ev_solution;      // the expected-value problem's optimum
};

/// Solves both the stochastic and the expected-value problem and reports the
/// value of the stochastic solution. When the EV solution breaks recovery
/// capacity under some scenario, its collected quantities are scaled per
/// center to what a minimum-cost maximum flow can place, and the report says
/// so.
StochasticReport compute_mrvss(const Instance& inst, const RiskParams& params,
                               const SolverConfig& config = {});

}  // namespace revlog
