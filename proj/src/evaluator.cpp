#include "revlog/detail/evaluator.hpp"

#include <algorithm>
#include <cmath>

#include "revlog/choice.hpp"

namespace revlog::detail {

namespace {
constexpr double kPenaltyScale = -1e8;
constexpr double kShortfallTol = 1e-9;
}  // namespace

Evaluator::Evaluator(const Instance& inst, const Design& design,
                     const RiskParams& params)
    : inst_(&inst), design_(design), params_(params) {
  validate(params);
  check_design(inst, design);
  if (!inst.fully_realized())
    throw ValidationError({"scenario quantities are not realized"});

  beta_ = inst.quality[design.cutoff].beta;
  h_ = inst.quality[design.cutoff].h;
  for (std::size_t i = 0; i < inst.n_centers(); ++i)
    if (design.open[i]) f_total_ += inst.fixed_cost[i];

  const bool reman_on = beta_ > 0.0;
  const bool scrap_on = beta_ < 1.0;
  for (std::size_t k = 0; k < inst.n_nodes(); ++k) {
    if (!design.serves(k)) continue;
    const auto i = std::size_t(design.assignment[k]);
    node_.push_back(k);
    center_.push_back(i);
    d_.push_back(inst.travel_cost[k][i]);
    logu_.push_back(std::log(inst.utility[k]));
    coord_r_.push_back(kNoCoord);
    coord_s_.push_back(kNoCoord);
    const double lo = inst.travel_cost[k][i] + kPriceMargin;
    if (reman_on) {
      coord_r_.back() = coords_.size();
      coords_.push_back({k, true, lo, inst.reman_value});
      if (lo > inst.reman_value) box_feasible_ = false;
    }
    if (scrap_on) {
      coord_s_.back() = coords_.size();
      coords_.push_back({k, false, lo, inst.scrap_value});
      if (lo > inst.scrap_value) box_feasible_ = false;
    }
  }

  const std::size_t n_served = node_.size();
  const std::size_t n_scen = inst.n_scenarios();
  quantity_.resize(n_scen * n_served);
  probs_.resize(n_scen);
  for (std::size_t t = 0; t < n_scen; ++t) {
    probs_[t] = inst.scenarios[t].prob;
    for (std::size_t s = 0; s < n_served; ++s)
      quantity_[t * n_served + s] = inst.quantity(node_[s], t);
  }

  xr_.assign(n_served, 0.0);
  xs_.assign(n_served, 0.0);
  collected_.assign(inst.n_centers(), 0.0);
  losses_.assign(n_scen, 0.0);
}

double Evaluator::core(const std::vector<double>& x, Evaluation* out,
                       std::vector<FlowPlan>* plans, bool& feasible) {
  feasible = true;
  if (out) *out = Evaluation{};
  const std::size_t n_served = node_.size();
  const std::size_t n_scen = probs_.size();
  const bool reman_on = beta_ > 0.0;
  const bool scrap_on = beta_ < 1.0;

  // Attraction fractions are scenario-independent; expressions match
  // attraction_fraction / demand_split term for term so demand and flows
  // agree bitwise with the choice module at equal prices.
  for (std::size_t s = 0; s < n_served; ++s) {
    if (reman_on) xr_[s] = sigmoid((x[coord_r_[s]] - d_[s]) - logu_[s]);
    if (scrap_on) xs_[s] = sigmoid((x[coord_s_[s]] - d_[s]) - logu_[s]);
  }

  double exp_rev = 0.0;
  double exp_loss = 0.0;
  double total_short = 0.0;
  for (std::size_t t = 0; t < n_scen; ++t) {
    const double* quantity = quantity_.data() + t * n_served;
    double sum_dr = 0.0, sum_ds = 0.0, inc_r = 0.0, inc_s = 0.0;
    std::fill(collected_.begin(), collected_.end(), 0.0);
    for (std::size_t s = 0; s < n_served; ++s) {
      if (reman_on) {
        const double dr = quantity[s] * beta_ * xr_[s];
        sum_dr += dr;
        inc_r += x[coord_r_[s]] * dr;
        collected_[center_[s]] += dr;
      }
      if (scrap_on) {
        const double ds = quantity[s] * (1.0 - beta_) * xs_[s];
        sum_ds += ds;
        inc_s += x[coord_s_[s]] * ds;
      }
    }

    const double tcost =
        route_core(collected_, inst_->ship_cost, inst_->capacity, route_);
    double short_t = 0.0;
    for (double r : route_.remaining) short_t += r;
    if (short_t > kShortfallTol) {
      // Keep scanning: the penalty must grade the overflow of every scenario,
      // or the search stalls on one scenario's boundary while another is
      // still far over capacity.
      feasible = false;
      total_short += short_t;
      continue;
    }
    if (!feasible) continue;

    const double rem_cost = h_ * inst_->reman_fixed_cost * sum_dr;
    const double loss = inc_r + inc_s + tcost + rem_cost;
    losses_[t] = loss;
    const double rev_r = inst_->reman_value * sum_dr;
    const double rev_s = inst_->scrap_value * sum_ds;
    exp_rev += probs_[t] * (rev_r + rev_s);
    exp_loss += probs_[t] * loss;

    if (out) {
      out->terms.revenue_reman += probs_[t] * rev_r;
      out->terms.revenue_scrap += probs_[t] * rev_s;
      out->terms.incentive_reman += probs_[t] * inc_r;
      out->terms.incentive_scrap += probs_[t] * inc_s;
      out->terms.transport_cost += probs_[t] * tcost;
      out->terms.remanufacture_cost += probs_[t] * rem_cost;
    }
    if (plans) plans->push_back(plan_from_scratch(route_, tcost));
  }

  if (!feasible) return kPenaltyScale * (1.0 + total_short);

  const CvarResult cv =
      cvar_core(losses_.data(), probs_.data(), n_scen, params_.alpha, cvar_);
  const double expected_profit = exp_rev - f_total_ - exp_loss;
  const double objective =
      expected_profit - params_.lambda * (f_total_ + cv.cvar);

  if (out) {
    out->terms.fixed_cost = f_total_;
    out->var_threshold = cv.var_threshold;
    out->cvar = cv.cvar;
    out->expected_profit = expected_profit;
    out->objective = objective;
    out->losses = losses_;
    out->excesses.resize(n_scen);
    for (std::size_t t = 0; t < n_scen; ++t)
      out->excesses[t] = std::max(losses_[t] - cv.var_threshold, 0.0);
  }
  return objective;
}

double Evaluator::objective(const std::vector<double>& x) {
  bool feasible = true;
  return core(x, nullptr, nullptr, feasible);
}

Evaluation Evaluator::evaluate(const std::vector<double>& x,
                               std::vector<FlowPlan>* plans) {
  if (plans) {
    plans->clear();
    plans->reserve(probs_.size());
  }
  Evaluation out;
  bool feasible = true;
  core(x, &out, plans, feasible);
  if (!feasible)
    throw InfeasibleError(
        "recovery capacity exceeded: no feasible routing at these prices");
  return out;
}

PriceVector Evaluator::prices(const std::vector<double>& x) const {
  PriceVector pv = PriceVector::absent(inst_->n_nodes());
  for (std::size_t c = 0; c < coords_.size(); ++c) {
    if (coords_[c].reman)
      pv.reman[coords_[c].node] = x[c];
    else
      pv.scrap[coords_[c].node] = x[c];
  }
  return pv;
}

std::vector<double> Evaluator::coordinates(const PriceVector& pv) const {
  std::vector<double> x(coords_.size(), 0.0);
  for (std::size_t c = 0; c < coords_.size(); ++c) {
    const std::size_t k = coords_[c].node;
    const double v = coords_[c].reman ? pv.reman[k] : pv.scrap[k];
    if (std::isnan(v))
      throw ValidationError({"price missing for node " + inst_->nodes[k]});
    x[c] = v;
  }
  return x;
}

}  // namespace revlog::detail
