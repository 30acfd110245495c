#include "revlog/flow.hpp"

#include <cmath>
#include <limits>

namespace revlog {

namespace {
constexpr double kEps = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool arc_exists(double cost) { return !std::isnan(cost); }
}  // namespace

std::vector<double> FlowPlan::shipped_per_center(std::size_t n_centers) const {
  std::vector<double> out(n_centers, 0.0);
  for (const auto& s : shipments) out[s.center] += s.quantity;
  return out;
}

std::vector<double> FlowPlan::arriving_per_recovery(std::size_t n_recovery) const {
  std::vector<double> out(n_recovery, 0.0);
  for (const auto& s : shipments) out[s.recovery] += s.quantity;
  return out;
}

bool check_capacity(const FlowPlan& plan, const std::vector<double>& capacity) {
  auto arriving = plan.arriving_per_recovery(capacity.size());
  for (std::size_t j = 0; j < capacity.size(); ++j)
    if (arriving[j] > capacity[j] + 1e-9) return false;
  return true;
}

namespace detail {

void RoutingScratch::reset(std::size_t centers, std::size_t recovery) {
  n_centers = centers;
  n_recovery = recovery;
  flow.assign(centers * recovery, 0.0);
  remaining.assign(centers, 0.0);
  headroom.assign(recovery, 0.0);
  dist.assign(centers + recovery, 0.0);
  pred.assign(centers + recovery, -1);
}

double route_core(const std::vector<double>& collected,
                  const std::vector<std::vector<double>>& ship_cost,
                  const std::vector<double>& capacity, RoutingScratch& s) {
  const std::size_t m = collected.size();
  const std::size_t n = capacity.size();
  s.reset(m, n);
  for (std::size_t i = 0; i < m; ++i) s.remaining[i] = collected[i] > 0.0 ? collected[i] : 0.0;
  for (std::size_t j = 0; j < n; ++j) s.headroom[j] = capacity[j];

  // Fast path: everything on each center's cheapest arc, if capacity allows.
  {
    bool ok = true;
    double cost = 0.0;
    for (std::size_t i = 0; i < m && ok; ++i) {
      if (s.remaining[i] <= kEps) continue;
      std::size_t best = n;
      double best_cost = kInf;
      for (std::size_t j = 0; j < n; ++j) {
        const double a = ship_cost[i][j];
        if (arc_exists(a) && a < best_cost) {
          best_cost = a;
          best = j;
        }
      }
      if (best == n) {
        ok = false;
        break;
      }
      s.headroom[best] -= s.remaining[i];
      if (s.headroom[best] < 0.0) {
        ok = false;
        break;
      }
      s.flow[i * n + best] = s.remaining[i];
      cost += s.remaining[i] * best_cost;
    }
    if (ok) {
      for (std::size_t i = 0; i < m; ++i) s.remaining[i] = 0.0;
      return cost;
    }
    // Undo partial fast-path state.
    s.flow.assign(m * n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      s.remaining[i] = collected[i] > 0.0 ? collected[i] : 0.0;
    for (std::size_t j = 0; j < n; ++j) s.headroom[j] = capacity[j];
  }

  // Successive shortest augmenting paths. dist/pred index centers first,
  // then recovery nodes; pred stores the other side's index.
  double total_cost = 0.0;
  const int max_rounds = int(4 * (m + 2) * (n + 2));
  int rounds = 0;
  while (true) {
    bool any_supply = false;
    for (std::size_t i = 0; i < m; ++i)
      if (s.remaining[i] > kEps) {
        any_supply = true;
        break;
      }
    if (!any_supply) break;
    if (++rounds > max_rounds)
      throw std::logic_error("route_core: augmentation cap exceeded");

    auto& dist = s.dist;
    auto& pred = s.pred;
    for (std::size_t v = 0; v < m + n; ++v) {
      dist[v] = kInf;
      pred[v] = -1;
    }
    for (std::size_t i = 0; i < m; ++i)
      if (s.remaining[i] > kEps) dist[i] = 0.0;

    // Bellman-Ford to a fixpoint; strict improvements only, so the
    // predecessor links always form a tree.
    for (std::size_t round = 0; round < m + n + 2; ++round) {
      bool changed = false;
      for (std::size_t i = 0; i < m; ++i) {
        if (dist[i] == kInf) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const double a = ship_cost[i][j];
          if (!arc_exists(a)) continue;
          if (dist[i] + a < dist[m + j]) {
            dist[m + j] = dist[i] + a;
            pred[m + j] = int(i);
            changed = true;
          }
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (dist[m + j] == kInf) continue;
        for (std::size_t i = 0; i < m; ++i) {
          if (s.flow[i * n + j] <= kEps) continue;
          const double a = ship_cost[i][j];
          if (dist[m + j] - a < dist[i]) {
            dist[i] = dist[m + j] - a;
            pred[i] = int(j);
            changed = true;
          }
        }
      }
      if (!changed) break;
    }

    std::size_t target = n;
    double best = kInf;
    for (std::size_t j = 0; j < n; ++j)
      if (s.headroom[j] > kEps && dist[m + j] < best) {
        best = dist[m + j];
        target = j;
      }
    if (target == n) break;  // no augmenting path; leftover stays in remaining

    // Bottleneck along the path.
    double delta = s.headroom[target];
    {
      std::size_t j = target;
      while (true) {
        const auto i = std::size_t(pred[m + j]);
        if (pred[i] < 0) {
          if (s.remaining[i] < delta) delta = s.remaining[i];
          break;
        }
        const auto jprev = std::size_t(pred[i]);
        if (s.flow[i * n + jprev] < delta) delta = s.flow[i * n + jprev];
        j = jprev;
      }
    }

    // Augment. Every forward hop books headroom so the invariant
    // headroom[j] == capacity[j] - inflow[j] survives rerouting through
    // intermediate recovery nodes.
    {
      std::size_t j = target;
      while (true) {
        const auto i = std::size_t(pred[m + j]);
        s.flow[i * n + j] += delta;
        s.headroom[j] -= delta;
        total_cost += delta * ship_cost[i][j];
        if (pred[i] < 0) {
          s.remaining[i] -= delta;
          break;
        }
        const auto jprev = std::size_t(pred[i]);
        s.flow[i * n + jprev] -= delta;
        s.headroom[jprev] += delta;
        total_cost -= delta * ship_cost[i][jprev];
        j = jprev;
      }
    }
  }
  return total_cost;
}

FlowPlan plan_from_scratch(const RoutingScratch& s, double cost) {
  FlowPlan plan;
  plan.cost = cost;
  for (std::size_t i = 0; i < s.n_centers; ++i)
    for (std::size_t j = 0; j < s.n_recovery; ++j) {
      const double f = s.flow[i * s.n_recovery + j];
      if (f > kEps) plan.shipments.push_back({i, j, f});
    }
  return plan;
}

}  // namespace detail

FlowPlan route_flows(const std::vector<double>& collected,
                     const std::vector<std::vector<double>>& ship_cost,
                     const std::vector<double>& capacity) {
  detail::RoutingScratch scratch;
  const double cost = detail::route_core(collected, ship_cost, capacity, scratch);
  for (std::size_t i = 0; i < scratch.n_centers; ++i)
    if (scratch.remaining[i] > 1e-9)
      throw InfeasibleError("routing infeasible: center " + std::to_string(i) +
                            " cannot place " + std::to_string(scratch.remaining[i]) +
                            " units within recovery capacity");
  return detail::plan_from_scratch(scratch, cost);
}

FlowPlan route_flows_best_effort(const std::vector<double>& collected,
                                 const std::vector<std::vector<double>>& ship_cost,
                                 const std::vector<double>& capacity,
                                 std::vector<double>& shortfall) {
  detail::RoutingScratch scratch;
  const double cost = detail::route_core(collected, ship_cost, capacity, scratch);
  shortfall = scratch.remaining;
  return detail::plan_from_scratch(scratch, cost);
}

}  // namespace revlog
