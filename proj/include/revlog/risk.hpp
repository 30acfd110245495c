#pragma once

#include <cstddef>
#include <vector>

#include "revlog/choice.hpp"
#include "revlog/design.hpp"
#include "revlog/flow.hpp"
#include "revlog/instance.hpp"

namespace revlog {

struct RiskParams {
  double alpha = 0.0;   // confidence level, in [0, 1)
  double lambda = 0.0;  // risk weight, >= 0
};

/// Throws ValidationError unless alpha is in [0,1) and lambda >= 0.
void validate(const RiskParams& params);

/// Discrete loss distribution: parallel losses and probabilities.
struct LossDistribution {
  std::vector<double> losses;
  std::vector<double> probs;
};

/// Throws ValidationError unless probabilities are positive and sum to 1
/// within 1e-9, with sizes matching.
void validate(const LossDistribution& dist);

struct CvarResult {
  double var_threshold = 0.0;  // the minimizing eta (alpha-quantile)
  double cvar = 0.0;
};

/// CVaR via the quantile closed form: eta is the smallest loss whose
/// cumulative probability reaches alpha, and
/// cvar = eta + (1/(1-alpha)) * sum pi * max(L - eta, 0).
CvarResult cvar(const LossDistribution& dist, double alpha);

/// The itemized parts of the objective. All money; every entry except
/// fixed_cost is a probability-weighted expectation over scenarios.
struct EvaluationTerms {
  double revenue_reman = 0.0;
  double revenue_scrap = 0.0;
  double fixed_cost = 0.0;  // sum of f_i over open centers, unweighted
  double incentive_reman = 0.0;
  double incentive_scrap = 0.0;
  double transport_cost = 0.0;
  double remanufacture_cost = 0.0;
};

struct Evaluation {
  double var_threshold = 0.0;
  double cvar = 0.0;
  double expected_profit = 0.0;
  double objective = 0.0;
  std::vector<double> losses;    // L_theta per scenario
  std::vector<double> excesses;  // max(L_theta - var_threshold, 0)
  EvaluationTerms terms;
};

/// Scenario-dependent operational cost: incentives paid, transport, and
/// remanufacturing. No probability weighting here.
double scenario_loss(const Instance& inst, const Design& design,
                     const PriceVector& prices, const DemandTable& demand,
                     const FlowPlan& flows, std::size_t scenario);

/// Full mean-risk evaluation of a feasible (design, prices) pair:
///   objective = E[revenue] - (1+lambda)*fixed - E[loss] - lambda*cvar(L).
/// Requires a fully realized instance (concrete scenario quantities).
/// Throws InfeasibleError when routing fails in some scenario, and
/// ValidationError on bad prices, design, or params.
Evaluation mean_risk_objective(const Instance& inst, const Design& design,
                               const PriceVector& prices,
                               const RiskParams& params);

namespace detail {

struct CvarScratch {
  std::vector<std::size_t> order;
};

/// Unvalidated CVaR core shared by cvar() and the solver's evaluator so both
/// produce identical bits for identical inputs.
CvarResult cvar_core(const double* losses, const double* probs, std::size_t n,
                     double alpha, CvarScratch& scratch);

}  // namespace detail

}  // namespace revlog
