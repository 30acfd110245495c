#include "revlog/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

namespace revlog::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double naive_logit(double v, double d, double u) {
  const double e = std::exp(v - d);
  return e / (e + u);
}

/// Quantile CVaR written from the definition, separately from the library's
/// implementation. atoms is scratch: (loss, prob) pairs.
double quantile_cvar(std::vector<std::pair<double, double>>& atoms,
                     double alpha) {
  std::sort(atoms.begin(), atoms.end());
  double eta = atoms.back().first;
  double cum = 0.0;
  for (const auto& [loss, prob] : atoms) {
    cum += prob;
    if (cum + 1e-12 >= alpha) {
      eta = loss;
      break;
    }
  }
  double tail = 0.0;
  for (const auto& [loss, prob] : atoms)
    if (loss > eta) tail += prob * (loss - eta);
  return eta + tail / (1.0 - alpha);
}

/// Routing the oracle can certify as exact: a single supplying center
/// (greedy fill, cheapest arc first) or enough slack that every center's
/// whole supply fits any single recovery center (cheapest arc each).
/// Returns nullopt when the quantities cannot be placed at all.
std::optional<double> restricted_route(
    const std::vector<double>& collected,
    const std::vector<std::vector<double>>& ship_cost,
    const std::vector<double>& capacity) {
  const std::size_t m = collected.size();
  const std::size_t r = capacity.size();
  double total = 0.0;
  std::size_t active = 0;
  std::size_t single = m;
  for (std::size_t i = 0; i < m; ++i)
    if (collected[i] > 0.0) {
      ++active;
      single = i;
      total += collected[i];
    }
  if (active == 0) return 0.0;

  if (active == 1) {
    // Fill arcs in cost order until the supply is placed.
    std::vector<std::pair<double, std::size_t>> arcs;
    for (std::size_t j = 0; j < r; ++j)
      if (!std::isnan(ship_cost[single][j]))
        arcs.emplace_back(ship_cost[single][j], j);
    std::sort(arcs.begin(), arcs.end());
    double left = collected[single];
    double cost = 0.0;
    for (const auto& [a, j] : arcs) {
      const double q = std::min(left, capacity[j]);
      cost += q * a;
      left -= q;
      if (left <= 1e-12) return cost;
    }
    return std::nullopt;
  }

  double min_cap = kInf;
  for (double c : capacity) min_cap = std::min(min_cap, c);
  if (total <= min_cap) {
    // Any recovery center could take everything, so per-center cheapest
    // arcs are jointly feasible and individually optimal.
    double cost = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (collected[i] <= 0.0) continue;
      double cheapest = kInf;
      for (std::size_t j = 0; j < r; ++j)
        if (!std::isnan(ship_cost[i][j]))
          cheapest = std::min(cheapest, ship_cost[i][j]);
      if (cheapest == kInf) return std::nullopt;
      cost += collected[i] * cheapest;
    }
    return cost;
  }

  throw ValidationError(
      {"grid oracle cannot certify routing here: it needs a single supplying "
       "center or recovery capacity slack"});
}

/// Direct evaluation of one (design, prices) point, summed straight from the
/// objective's definition. nullopt marks an infeasible point (routing).
class PointEval {
 public:
  PointEval(const Instance& inst, const RiskParams& params)
      : inst_(&inst), params_(params) {}

  void set_design(const Design& design) {
    beta_ = inst_->quality[design.cutoff].beta;
    h_ = inst_->quality[design.cutoff].h;
    fixed_ = 0.0;
    for (std::size_t i = 0; i < inst_->n_centers(); ++i)
      if (design.open[i]) fixed_ += inst_->fixed_cost[i];
    served_.clear();
    center_.clear();
    for (std::size_t k = 0; k < inst_->n_nodes(); ++k)
      if (design.assignment[k] >= 0) {
        served_.push_back(k);
        center_.push_back(std::size_t(design.assignment[k]));
      }
  }

  /// vr/vs are indexed by node; only served entries are read.
  std::optional<double> operator()(const std::vector<double>& vr,
                                   const std::vector<double>& vs) {
    const std::size_t n_scen = inst_->n_scenarios();
    double mean_revenue = 0.0;
    double mean_loss = 0.0;
    atoms_.clear();
    for (std::size_t t = 0; t < n_scen; ++t) {
      collected_.assign(inst_->n_centers(), 0.0);
      double revenue = 0.0, incentives = 0.0, reman_total = 0.0;
      for (std::size_t s = 0; s < served_.size(); ++s) {
        const std::size_t k = served_[s];
        const double d = inst_->travel_cost[k][center_[s]];
        const double u = inst_->utility[k];
        const double quantity = inst_->quantity(k, t);
        if (beta_ > 0.0) {
          const double dr = quantity * beta_ * naive_logit(vr[k], d, u);
          revenue += inst_->reman_value * dr;
          incentives += vr[k] * dr;
          collected_[center_[s]] += dr;
          reman_total += dr;
        }
        if (beta_ < 1.0) {
          const double ds = quantity * (1.0 - beta_) * naive_logit(vs[k], d, u);
          revenue += inst_->scrap_value * ds;
          incentives += vs[k] * ds;
        }
      }
      const auto transport =
          restricted_route(collected_, inst_->ship_cost, inst_->capacity);
      if (!transport) return std::nullopt;
      const double loss = incentives + *transport +
                          h_ * inst_->reman_fixed_cost * reman_total;
      const double prob = inst_->scenarios[t].prob;
      mean_revenue += prob * revenue;
      mean_loss += prob * loss;
      atoms_.emplace_back(loss, prob);
    }
    const double risk = quantile_cvar(atoms_, params_.alpha);
    return mean_revenue - (1.0 + params_.lambda) * fixed_ - mean_loss -
           params_.lambda * risk;
  }

 private:
  const Instance* inst_;
  RiskParams params_;
  double beta_ = 0.0, h_ = 0.0, fixed_ = 0.0;
  std::vector<std::size_t> served_, center_;
  std::vector<double> collected_;
  std::vector<std::pair<double, double>> atoms_;
};

std::vector<double> grid_points(double lo, double hi, double step) {
  std::vector<double> points;
  for (double v = lo; v <= hi + 1e-12; v += step) points.push_back(v);
  if (!points.empty() && points.back() < hi - 1e-12) points.push_back(hi);
  return points;
}

bool mul_capped(unsigned long long& acc, unsigned long long factor,
                unsigned long long cap) {
  if (factor != 0 && acc > cap / factor) {
    acc = cap + 1;
    return false;
  }
  acc *= factor;
  return true;
}

}  // namespace

double cvar_grid_min(const LossDistribution& dist, double alpha,
                     double eta_step) {
  validate(dist);
  if (!(eta_step > 0.0)) throw ValidationError({"eta_step must be positive"});
  const double lo = *std::min_element(dist.losses.begin(), dist.losses.end());
  const double hi = *std::max_element(dist.losses.begin(), dist.losses.end());
  const double scale = 1.0 / (1.0 - alpha);

  double best = kInf;
  auto objective = [&](double eta) {
    double tail = 0.0;
    for (std::size_t i = 0; i < dist.losses.size(); ++i)
      if (dist.losses[i] > eta)
        tail += dist.probs[i] * (dist.losses[i] - eta);
    return eta + scale * tail;
  };
  for (double eta = lo; eta <= hi + 1e-12; eta += eta_step)
    best = std::min(best, objective(eta));
  best = std::min(best, objective(hi));
  return best;
}

GridSolution grid_solve(const Instance& inst, const RiskParams& params,
                        double price_step, std::size_t budget) {
  validate(inst);
  validate(params);
  if (!(price_step > 0.0))
    throw ValidationError({"price_step must be positive"});
  if (!inst.fully_realized())
    throw ValidationError({"scenario quantities are not realized"});

  const std::size_t n = inst.n_nodes();
  const std::size_t m = inst.n_centers();
  if (m > 20) throw BudgetExceededError("too many centers for the grid oracle");
  const std::uint32_t top = std::uint32_t(1) << m;

  // Points per (node, center, stream); stream presence depends on the level.
  auto points_for = [&](std::size_t k, std::size_t i, bool reman) {
    const double lo = inst.travel_cost[k][i] + kPriceMargin;
    const double hi = reman ? inst.reman_value : inst.scrap_value;
    if (lo > hi) return std::size_t(0);  // empty box: no feasible price
    return grid_points(lo, hi, price_step).size();
  };

  // Count evaluations first; refuse rather than truncate. For one center
  // subset and level, summing the per-combination grid products factors into
  // a per-node product of (1 + sum over reachable centers of points).
  unsigned long long total = 1;  // the empty design
  for (std::uint32_t mask = 1; mask < top; ++mask) {
    for (std::size_t level = 0; level < inst.n_levels(); ++level) {
      const bool reman_on = inst.quality[level].beta > 0.0;
      const bool scrap_on = inst.quality[level].beta < 1.0;
      unsigned long long block = 1;
      for (std::size_t k = 0; k < n && block <= budget; ++k) {
        unsigned long long node_sum = 1;  // the unserved option
        for (std::size_t i = 0; i < m; ++i) {
          if (!((mask >> i) & 1u) || !inst.travel_arc(k, i)) continue;
          unsigned long long pts = 1;
          if (reman_on) mul_capped(pts, points_for(k, i, true), budget);
          if (scrap_on) mul_capped(pts, points_for(k, i, false), budget);
          node_sum += pts;
        }
        mul_capped(block, node_sum, budget);
      }
      total = total > budget ? total : total + block;
      if (total > budget)
        throw BudgetExceededError(
            "grid search needs more than the budget of " +
            std::to_string(budget) + " evaluations");
    }
  }

  GridSolution best;
  best.objective = -kInf;
  PointEval eval(inst, params);
  std::vector<double> vr(n, 0.0), vs(n, 0.0);
  std::size_t evaluations = 0;

  Design design;
  design.open.assign(m, 0);
  design.assignment.assign(n, -1);
  design.cutoff = 0;

  auto consider = [&](const Design& d) {
    ++evaluations;
    const auto value = eval(vr, vs);
    if (value && *value > best.objective) {
      best.objective = *value;
      best.design = d;
      best.prices = PriceVector::absent(n);
      const double beta = inst.quality[d.cutoff].beta;
      for (std::size_t k = 0; k < n; ++k) {
        if (d.assignment[k] < 0) continue;
        if (beta > 0.0) best.prices.reman[k] = vr[k];
        if (beta < 1.0) best.prices.scrap[k] = vs[k];
      }
    }
  };

  // The empty design.
  eval.set_design(design);
  consider(design);

  for (std::uint32_t mask = 1; mask < top; ++mask) {
    for (std::size_t i = 0; i < m; ++i)
      design.open[i] = std::uint8_t((mask >> i) & 1u);

    std::vector<std::vector<int>> options(n);
    for (std::size_t k = 0; k < n; ++k) {
      options[k].push_back(-1);
      for (std::size_t i = 0; i < m; ++i)
        if (((mask >> i) & 1u) && inst.travel_arc(k, i))
          options[k].push_back(int(i));
    }

    std::vector<std::size_t> combo(n, 0);
    while (true) {
      for (std::size_t k = 0; k < n; ++k)
        design.assignment[k] = options[k][combo[k]];

      for (std::size_t level = 0; level < inst.n_levels(); ++level) {
        design.cutoff = level;
        eval.set_design(design);
        const bool reman_on = inst.quality[level].beta > 0.0;
        const bool scrap_on = inst.quality[level].beta < 1.0;

        // Free coordinates of this design, with their grid values.
        std::vector<std::size_t> coord_node;
        std::vector<bool> coord_reman;
        std::vector<std::vector<double>> coord_values;
        bool feasible = true;
        for (std::size_t k = 0; k < n && feasible; ++k) {
          if (design.assignment[k] < 0) continue;
          const auto i = std::size_t(design.assignment[k]);
          const double lo = inst.travel_cost[k][i] + kPriceMargin;
          for (int stream = 0; stream < 2 && feasible; ++stream) {
            const bool reman = stream == 0;
            if (reman && !reman_on) continue;
            if (!reman && !scrap_on) continue;
            const double hi = reman ? inst.reman_value : inst.scrap_value;
            if (lo > hi) {
              feasible = false;
              break;
            }
            coord_node.push_back(k);
            coord_reman.push_back(reman);
            coord_values.push_back(grid_points(lo, hi, price_step));
          }
        }
        if (!feasible) continue;

        std::vector<std::size_t> idx(coord_values.size(), 0);
        while (true) {
          for (std::size_t c = 0; c < idx.size(); ++c) {
            const double v = coord_values[c][idx[c]];
            if (coord_reman[c])
              vr[coord_node[c]] = v;
            else
              vs[coord_node[c]] = v;
          }
          consider(design);

          std::size_t c = 0;
          while (c < idx.size() && ++idx[c] == coord_values[c].size()) {
            idx[c] = 0;
            ++c;
          }
          if (c == idx.size()) break;
        }
      }

      std::size_t k = 0;
      while (k < n && ++combo[k] == options[k].size()) {
        combo[k] = 0;
        ++k;
      }
      if (k == n) break;
    }
  }

  best.evaluations = evaluations;

  // Lipschitz-style bound for the winning design: per coordinate, demand
  // moves at most R*w/4 per unit of price and each unit of demand moves the
  // objective by at most the bracketed value terms; (1+lambda) covers the
  // mean and the CVaR weighting.
  double gap = 0.0;
  {
    const Design& d = best.design;
    const double beta = inst.quality[d.cutoff].beta;
    const double h = inst.quality[d.cutoff].h;
    for (std::size_t k = 0; k < n; ++k) {
      if (d.assignment[k] < 0) continue;
      const auto i = std::size_t(d.assignment[k]);
      double r_max = 0.0;
      for (std::size_t t = 0; t < inst.n_scenarios(); ++t)
        r_max = std::max(r_max, inst.quantity(k, t));
      double a_max = 0.0;
      for (std::size_t j = 0; j < inst.n_recovery(); ++j)
        if (!std::isnan(inst.ship_cost[i][j]))
          a_max = std::max(a_max, inst.ship_cost[i][j]);
      for (int stream = 0; stream < 2; ++stream) {
        const bool reman = stream == 0;
        const double w = reman ? beta : 1.0 - beta;
        if (w <= 0.0) continue;
        const double value = reman ? inst.reman_value : inst.scrap_value;
        const double slope =
            (1.0 + params.lambda) * r_max * w *
            ((value + value + a_max + h * inst.reman_fixed_cost) / 4.0 + 1.0);
        gap += slope * (price_step / 2.0);
      }
    }
  }
  best.gap = gap;
  return best;
}

std::optional<double> route_cost_enumerated(
    const std::vector<long>& supplies,
    const std::vector<std::vector<double>>& ship_cost,
    const std::vector<long>& capacity) {
  const std::size_t m = supplies.size();
  std::vector<std::vector<std::size_t>> arcs(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < capacity.size(); ++j)
      if (!std::isnan(ship_cost[i][j])) arcs[i].push_back(j);

  std::vector<long> cap_left = capacity;
  double best = kInf;

  std::function<void(std::size_t, double)> next_center =
      [&](std::size_t i, double acc) {
        if (acc >= best) return;
        if (i == m) {
          best = acc;
          return;
        }
        if (supplies[i] <= 0) {
          next_center(i + 1, acc);
          return;
        }
        if (arcs[i].empty()) return;

        std::function<void(std::size_t, long, double)> place =
            [&](std::size_t p, long left, double cost) {
              if (cost >= best) return;
              const std::size_t j = arcs[i][p];
              if (p + 1 == arcs[i].size()) {
                if (left <= cap_left[j]) {
                  cap_left[j] -= left;
                  next_center(i + 1, cost + double(left) * ship_cost[i][j]);
                  cap_left[j] += left;
                }
                return;
              }
              const long fit = std::min(left, cap_left[j]);
              for (long q = 0; q <= fit; ++q) {
                cap_left[j] -= q;
                place(p + 1, left - q, cost + double(q) * ship_cost[i][j]);
                cap_left[j] += q;
              }
            };
        place(0, supplies[i], acc);
      };
  next_center(0, 0.0);

  if (best == kInf) return std::nullopt;
  return best;
}

LossDistribution random_distribution(std::mt19937_64& rng,
                                     std::size_t max_atoms) {
  auto unit = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };
  const std::size_t n = 2 + std::size_t(rng() % (max_atoms - 1));
  LossDistribution dist;
  dist.losses.reserve(n);
  dist.probs.reserve(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dist.losses.push_back(200.0 * unit());
    dist.probs.push_back(0.05 + unit());
    sum += dist.probs.back();
  }
  for (double& p : dist.probs) p /= sum;
  return dist;
}

namespace {

Instance micro_base(std::size_t nodes, std::size_t centers,
                    std::size_t recovery) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Instance m;
  for (std::size_t k = 0; k < nodes; ++k)
    m.nodes.push_back("n" + std::to_string(k + 1));
  for (std::size_t i = 0; i < centers; ++i)
    m.centers.push_back("c" + std::to_string(i + 1));
  for (std::size_t j = 0; j < recovery; ++j)
    m.recovery_centers.push_back("r" + std::to_string(j + 1));
  m.travel_cost.assign(nodes, std::vector<double>(centers, nan));
  m.ship_cost.assign(centers, std::vector<double>(recovery, nan));
  m.fixed_cost.assign(centers, 1.0);
  m.utility.assign(nodes, 1.0);
  m.capacity.assign(recovery, 50.0);
  m.reman_value = 4.5;
  m.scrap_value = 1.8;
  m.reman_fixed_cost = 3.0;
  return m;
}

Scenario fixed_scenario(double prob, std::vector<double> quantities) {
  Scenario s;
  s.prob = prob;
  s.quantities = std::move(quantities);
  return s;
}

}  // namespace

std::vector<Instance> micro_instances() {
  std::vector<Instance> out;

  {  // 1 node, 1 center, mixed quality: the basic two-price instance
    Instance m = micro_base(1, 1, 1);
    m.travel_cost[0][0] = 0.5;
    m.ship_cost[0][0] = 0.5;
    m.quality = {{0.5, 0.2}};
    m.scenarios = {fixed_scenario(1.0, {10.0})};
    out.push_back(std::move(m));
  }
  {  // two scenarios over the same shape
    Instance m = micro_base(1, 1, 1);
    m.travel_cost[0][0] = 0.5;
    m.ship_cost[0][0] = 0.5;
    m.quality = {{0.5, 0.2}};
    m.scenarios = {fixed_scenario(0.3, {6.0}), fixed_scenario(0.7, {14.0})};
    out.push_back(std::move(m));
  }
  {  // two-rung ladder hitting both degenerate betas
    Instance m = micro_base(1, 1, 1);
    m.travel_cost[0][0] = 0.4;
    m.ship_cost[0][0] = 0.75;
    m.utility = {0.8};
    m.reman_value = 4.8;
    m.quality = {{0.0, 0.05}, {1.0, 0.3}};
    m.scenarios = {fixed_scenario(1.0, {12.0})};
    out.push_back(std::move(m));
  }
  {  // interior betas, two levels, two scenarios
    Instance m = micro_base(1, 1, 1);
    m.travel_cost[0][0] = 0.6;
    m.ship_cost[0][0] = 0.5;
    m.fixed_cost = {1.2};
    m.reman_value = 4.6;
    m.capacity = {60.0};
    m.quality = {{0.4, 0.1}, {0.8, 0.25}};
    m.scenarios = {fixed_scenario(0.45, {8.0}), fixed_scenario(0.55, {18.0})};
    out.push_back(std::move(m));
  }
  {  // two competing centers, remanufacture only
    Instance m = micro_base(1, 2, 1);
    m.travel_cost[0] = {0.4, 0.7};
    m.ship_cost[0][0] = 0.5;
    m.ship_cost[1][0] = 0.25;
    m.fixed_cost = {3.0, 1.0};
    m.utility = {1.3};
    m.capacity = {60.0};
    m.quality = {{1.0, 0.2}};
    m.scenarios = {fixed_scenario(1.0, {15.0})};
    out.push_back(std::move(m));
  }
  {  // two centers, scrap only (nothing ever ships)
    Instance m = micro_base(1, 2, 1);
    m.travel_cost[0] = {0.5, 0.45};
    m.ship_cost[0][0] = 0.5;
    m.ship_cost[1][0] = 0.5;
    m.fixed_cost = {1.2, 1.5};
    m.reman_value = 3.0;
    m.scrap_value = 2.2;
    m.quality = {{0.0, 0.1}};
    m.scenarios = {fixed_scenario(1.0, {10.0})};
    out.push_back(std::move(m));
  }
  {  // opening cost far beyond any revenue: the empty design must win
    Instance m = micro_base(1, 1, 1);
    m.travel_cost[0][0] = 0.5;
    m.ship_cost[0][0] = 0.5;
    m.fixed_cost = {1e6};
    m.quality = {{0.5, 0.2}};
    m.scenarios = {fixed_scenario(1.0, {10.0})};
    out.push_back(std::move(m));
  }
  {  // the node cannot reach the only center
    Instance m = micro_base(1, 1, 1);
    m.ship_cost[0][0] = 0.5;
    m.quality = {{0.5, 0.2}};
    m.scenarios = {fixed_scenario(1.0, {10.0})};
    out.push_back(std::move(m));
  }
  {  // two nodes sharing one center, remanufacture only
    Instance m = micro_base(2, 1, 1);
    m.travel_cost[0][0] = 0.5;
    m.travel_cost[1][0] = 0.8;
    m.ship_cost[0][0] = 0.5;
    m.fixed_cost = {1.5};
    m.utility = {1.0, 1.6};
    m.reman_value = 4.2;
    m.capacity = {60.0};
    m.quality = {{1.0, 0.15}};
    m.scenarios = {fixed_scenario(1.0, {10.0, 15.0})};
    out.push_back(std::move(m));
  }
  {  // two nodes, one center, scrap only
    Instance m = micro_base(2, 1, 1);
    m.travel_cost[0][0] = 0.45;
    m.travel_cost[1][0] = 0.6;
    m.ship_cost[0][0] = 0.5;
    m.fixed_cost = {1.2};
    m.utility = {0.8, 1.4};
    m.reman_value = 3.0;
    m.scrap_value = 2.4;
    m.quality = {{0.0, 0.1}};
    m.scenarios = {fixed_scenario(1.0, {8.0, 12.0})};
    out.push_back(std::move(m));
  }
  {  // full 2x2 topology, remanufacture only
    Instance m = micro_base(2, 2, 1);
    m.travel_cost[0] = {0.5, 0.9};
    m.travel_cost[1] = {0.8, 0.4};
    m.ship_cost[0][0] = 0.5;
    m.ship_cost[1][0] = 0.75;
    m.fixed_cost = {1.2, 1.2};
    m.utility = {1.0, 1.2};
    m.reman_value = 4.0;
    m.scrap_value = 1.5;
    m.capacity = {80.0};
    m.quality = {{1.0, 0.2}};
    m.scenarios = {fixed_scenario(1.0, {10.0, 12.0})};
    out.push_back(std::move(m));
  }
  {  // one node tied to a single center by a missing arc
    Instance m = micro_base(2, 2, 1);
    m.travel_cost[0] = {0.5, 0.8};
    m.travel_cost[1][1] = 0.45;
    m.ship_cost[0][0] = 0.5;
    m.ship_cost[1][0] = 0.5;
    m.fixed_cost = {1.0, 1.3};
    m.reman_value = 4.0;
    m.scrap_value = 1.5;
    m.capacity = {60.0};
    m.quality = {{1.0, 0.2}};
    m.scenarios = {fixed_scenario(1.0, {8.0, 10.0})};
    out.push_back(std::move(m));
  }
  {  // scrap only across two scenarios and a full topology
    Instance m = micro_base(2, 2, 1);
    m.travel_cost[0] = {0.4, 0.7};
    m.travel_cost[1] = {0.6, 0.5};
    m.ship_cost[0][0] = 0.5;
    m.ship_cost[1][0] = 0.5;
    m.fixed_cost = {1.0, 1.0};
    m.reman_value = 3.0;
    m.scrap_value = 2.4;
    m.capacity = {40.0};
    m.quality = {{0.0, 0.1}};
    m.scenarios = {fixed_scenario(0.5, {5.0, 8.0}),
                   fixed_scenario(0.5, {12.0, 16.0})};
    out.push_back(std::move(m));
  }
  {  // ladder that flips between scrap-only and remanufacture-only
    Instance m = micro_base(2, 2, 1);
    m.travel_cost[0] = {0.5, 0.75};
    m.travel_cost[1] = {0.7, 0.45};
    m.ship_cost[0][0] = 0.5;
    m.ship_cost[1][0] = 0.75;
    m.fixed_cost = {1.0, 1.0};
    m.reman_value = 3.8;
    m.capacity = {60.0};
    m.quality = {{0.0, 0.05}, {1.0, 0.25}};
    m.scenarios = {fixed_scenario(1.0, {9.0, 11.0})};
    out.push_back(std::move(m));
  }
  {  // everything at its micro maximum: 2 nodes, centers, scenarios, levels
    Instance m = micro_base(2, 2, 2);
    m.travel_cost[0] = {0.6, 0.8};
    m.travel_cost[1] = {0.75, 0.5};
    m.ship_cost[0] = {0.5, 1.0};
    m.ship_cost[1] = {0.75, 0.5};
    m.fixed_cost = {1.0, 1.2};
    m.utility = {1.1, 0.9};
    m.reman_value = 3.6;
    m.scrap_value = 1.6;
    m.capacity = {50.0, 50.0};
    m.quality = {{0.0, 0.05}, {1.0, 0.25}};
    m.scenarios = {fixed_scenario(0.4, {6.0, 9.0}),
                   fixed_scenario(0.6, {14.0, 12.0})};
    out.push_back(std::move(m));
  }
  {  // a heavy-tailed scenario pair for the risk term
    Instance m = micro_base(1, 1, 1);
    m.travel_cost[0][0] = 0.5;
    m.ship_cost[0][0] = 0.5;
    m.fixed_cost = {1.2};
    m.reman_value = 5.0;
    m.capacity = {60.0};
    m.quality = {{0.6, 0.2}};
    m.scenarios = {fixed_scenario(0.9, {8.0}), fixed_scenario(0.1, {25.0})};
    out.push_back(std::move(m));
  }
  {  // second center is the only one with an arc to the node
    Instance m = micro_base(1, 2, 1);
    m.travel_cost[0][1] = 0.6;
    m.ship_cost[0][0] = 0.5;
    m.ship_cost[1][0] = 0.5;
    m.fixed_cost = {0.8, 1.2};
    m.quality = {{0.5, 0.2}};
    m.scenarios = {fixed_scenario(1.0, {10.0})};
    out.push_back(std::move(m));
  }
  {  // strong competitors damp the attraction fractions
    Instance m = micro_base(2, 1, 1);
    m.travel_cost[0][0] = 0.4;
    m.travel_cost[1][0] = 0.55;
    m.ship_cost[0][0] = 0.25;
    m.fixed_cost = {1.5};
    m.utility = {3.0, 2.5};
    m.reman_value = 5.0;
    m.scrap_value = 1.5;
    m.capacity = {60.0};
    m.quality = {{1.0, 0.1}};
    m.scenarios = {fixed_scenario(0.5, {20.0, 30.0}),
                   fixed_scenario(0.5, {10.0, 5.0})};
    out.push_back(std::move(m));
  }
  {  // recovery capacity tight enough to bind at high incentives
    Instance m = micro_base(1, 1, 1);
    m.travel_cost[0][0] = 0.5;
    m.ship_cost[0][0] = 0.5;
    m.utility = {2.0};
    m.reman_value = 5.5;
    m.capacity = {1.8};
    m.quality = {{0.5, 0.2}};
    m.scenarios = {fixed_scenario(1.0, {10.0})};
    out.push_back(std::move(m));
  }
  {  // cheap recovery center fills up first, the rest spills over
    Instance m = micro_base(1, 1, 2);
    m.travel_cost[0][0] = 0.5;
    m.ship_cost[0] = {0.5, 1.25};
    m.fixed_cost = {1.5};
    m.capacity = {1.0, 50.0};
    m.reman_fixed_cost = 2.0;
    m.quality = {{0.5, 0.25}};
    m.scenarios = {fixed_scenario(1.0, {10.0})};
    out.push_back(std::move(m));
  }

  for (const Instance& m : out) validate(m);
  return out;
}

}  // namespace revlog::oracle
