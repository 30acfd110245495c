#include "revlog/stochastic.hpp"

#include <cmath>

#include "revlog/choice.hpp"
#include "revlog/detail/evaluator.hpp"

namespace revlog {

Instance expected_value_instance(const Instance& inst) {
  if (inst.n_scenarios() <= 1) return inst;
  if (!inst.fully_realized())
    throw ValidationError({"scenario quantities are not realized"});

  Scenario mean;
  mean.prob = 1.0;
  mean.quantities.assign(inst.n_nodes(), 0.0);
  for (std::size_t t = 0; t < inst.n_scenarios(); ++t)
    for (std::size_t k = 0; k < inst.n_nodes(); ++k)
      mean.quantities[k] += inst.scenarios[t].prob * inst.quantity(k, t);

  Instance out = inst;
  out.scenarios = {std::move(mean)};
  return out;
}

namespace {

/// Last-resort score for an EV design with no capacity-feasible prices at
/// all: each center's remanufacturing stream is scaled down to what a
/// minimum-cost maximum flow can actually place; scrap is unaffected.
double scaled_flow_objective(const Instance& inst, const Design& design,
                             const PriceVector& prices,
                             const RiskParams& params) {
  const double beta = inst.quality[design.cutoff].beta;
  const double h = inst.quality[design.cutoff].h;

  double fixed = 0.0;
  for (std::size_t i = 0; i < inst.n_centers(); ++i)
    if (design.open[i]) fixed += inst.fixed_cost[i];

  const std::size_t n_scen = inst.n_scenarios();
  std::vector<double> losses(n_scen, 0.0), probs(n_scen, 0.0);
  double exp_rev = 0.0, exp_loss = 0.0;
  for (std::size_t t = 0; t < n_scen; ++t) {
    probs[t] = inst.scenarios[t].prob;
    const DemandTable demand = demand_table(inst, design, prices, t);
    const std::vector<double> collected = demand.collected();
    std::vector<double> shortfall;
    const FlowPlan plan = route_flows_best_effort(collected, inst.ship_cost,
                                                  inst.capacity, shortfall);
    std::vector<double> rho(inst.n_centers(), 1.0);
    for (std::size_t i = 0; i < inst.n_centers(); ++i)
      if (collected[i] > 0.0)
        rho[i] = (collected[i] - shortfall[i]) / collected[i];

    double revenue = 0.0, incentives = 0.0, shipped = 0.0;
    for (std::size_t k = 0; k < inst.n_nodes(); ++k) {
      if (!design.serves(k)) continue;
      const auto i = std::size_t(design.assignment[k]);
      const DemandCell& cell = demand.at(k, i);
      if (beta > 0.0) {
        const double reman = rho[i] * cell.reman;
        revenue += inst.reman_value * reman;
        incentives += prices.reman[k] * reman;
        shipped += reman;
      }
      if (beta < 1.0) {
        revenue += inst.scrap_value * cell.scrap;
        incentives += prices.scrap[k] * cell.scrap;
      }
    }
    losses[t] = incentives + plan.cost + h * inst.reman_fixed_cost * shipped;
    exp_rev += probs[t] * revenue;
    exp_loss += probs[t] * losses[t];
  }

  detail::CvarScratch scratch;
  const CvarResult cv = detail::cvar_core(losses.data(), probs.data(), n_scen,
                                          params.alpha, scratch);
  const double expected_profit = exp_rev - fixed - exp_loss;
  return expected_profit - params.lambda * (fixed + cv.cvar);
}

}  // namespace

StochasticReport compute_mrvss(const Instance& inst, const RiskParams& params,
                               const SolverConfig& config) {
  StochasticReport report;
  report.solution = solve(inst, params, config);
  report.mrrp = report.solution.evaluation.objective;

  const Instance ev = expected_value_instance(inst);
  report.ev_solution = solve(ev, params, config);

  try {
    report.mrev = mean_risk_objective(inst, report.ev_solution.design,
                                      report.ev_solution.prices, params)
                      .objective;
  } catch (const InfeasibleError&) {
    // The EV prices overload capacity in some scenario.  Repair keeps the EV
    // design and re-fits prices to the best capacity-feasible choice with the
    // same search the solver itself runs, so mrev can never exceed mrrp.
    report.ev_repaired = true;
    try {
      report.mrev =
          optimize_prices(inst, report.ev_solution.design, params, config)
              .evaluation.objective;
    } catch (const InfeasibleError&) {
      report.mrev = scaled_flow_objective(inst, report.ev_solution.design,
                                          report.ev_solution.prices, params);
    }
  }
  report.mrvss = report.mrrp - report.mrev;
  return report;
}

}  // namespace revlog
