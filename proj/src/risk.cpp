#include "revlog/risk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "revlog/detail/evaluator.hpp"

namespace revlog {

void validate(const RiskParams& params) {
  std::vector<std::string> issues;
  if (!(params.alpha >= 0.0 && params.alpha < 1.0))
    issues.push_back("alpha must lie in [0, 1), got " +
                     std::to_string(params.alpha));
  if (!(params.lambda >= 0.0))
    issues.push_back("lambda must be >= 0, got " +
                     std::to_string(params.lambda));
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

void validate(const LossDistribution& dist) {
  std::vector<std::string> issues;
  if (dist.losses.size() != dist.probs.size())
    issues.push_back("losses and probs must have equal length");
  if (dist.probs.empty()) issues.push_back("distribution has no atoms");
  for (double loss : dist.losses)
    if (!std::isfinite(loss)) {
      issues.push_back("losses must be finite");
      break;
    }
  double sum = 0.0;
  bool positive = true;
  for (double p : dist.probs) {
    if (!(p > 0.0)) positive = false;
    sum += p;
  }
  if (!positive) issues.push_back("probabilities must be positive");
  if (!dist.probs.empty() && std::abs(sum - 1.0) > 1e-9)
    issues.push_back("probabilities sum to " + std::to_string(sum) +
                     ", expected 1");
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

namespace detail {

CvarResult cvar_core(const double* losses, const double* probs, std::size_t n,
                     double alpha, CvarScratch& scratch) {
  CvarResult out;
  if (n == 0) return out;

  auto& order = scratch.order;
  order.resize(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (losses[a] != losses[b]) return losses[a] < losses[b];
    return a < b;
  });

  // eta is the smallest loss whose cumulative probability reaches alpha.
  double eta = losses[order[n - 1]];
  double cum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cum += probs[order[i]];
    if (cum >= alpha - 1e-12) {
      eta = losses[order[i]];
      break;
    }
  }

  double excess = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = losses[order[i]] - eta;
    if (z > 0.0) excess += probs[order[i]] * z;
  }
  out.var_threshold = eta;
  out.cvar = eta + excess / (1.0 - alpha);
  return out;
}

}  // namespace detail

CvarResult cvar(const LossDistribution& dist, double alpha) {
  validate(dist);
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw ValidationError(
        {"alpha must lie in [0, 1), got " + std::to_string(alpha)});
  detail::CvarScratch scratch;
  return detail::cvar_core(dist.losses.data(), dist.probs.data(),
                           dist.losses.size(), alpha, scratch);
}

double scenario_loss(const Instance& inst, const Design& design,
                     const PriceVector& prices, const DemandTable& demand,
                     const FlowPlan& flows, std::size_t scenario) {
  if (scenario >= inst.n_scenarios())
    throw std::out_of_range("scenario index out of range");
  const double beta = inst.quality[design.cutoff].beta;
  const double h = inst.quality[design.cutoff].h;

  double incentives = 0.0;
  for (std::size_t k = 0; k < demand.n_nodes; ++k) {
    if (!design.serves(k)) continue;
    const auto i = std::size_t(design.assignment[k]);
    const DemandCell& cell = demand.at(k, i);
    if (beta > 0.0) incentives += prices.reman[k] * cell.reman;
    if (beta < 1.0) incentives += prices.scrap[k] * cell.scrap;
  }

  double shipped = 0.0;
  for (const Shipment& s : flows.shipments) shipped += s.quantity;
  return incentives + flows.cost + h * inst.reman_fixed_cost * shipped;
}

Evaluation mean_risk_objective(const Instance& inst, const Design& design,
                               const PriceVector& prices,
                               const RiskParams& params) {
  detail::Evaluator eval(inst, design, params);
  check_prices(inst, design, prices);
  return eval.evaluate(eval.coordinates(prices));
}

}  // namespace revlog
