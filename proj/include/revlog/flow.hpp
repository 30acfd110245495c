#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace revlog {

/// Routing could not place all collected quantity within recovery capacity
/// (or arc existence); the enclosing design is infeasible for this scenario.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Shipment {
  std::size_t center = 0;
  std::size_t recovery = 0;
  double quantity = 0.0;
};

/// One scenario's routing: shipments and their total transport cost.
struct FlowPlan {
  std::vector<Shipment> shipments;
  double cost = 0.0;

  std::vector<double> shipped_per_center(std::size_t n_centers) const;
  std::vector<double> arriving_per_recovery(std::size_t n_recovery) const;
};

/// Minimum-cost assignment of each center's collected quantity to recovery
/// centers. `ship_cost[i][j]` is NaN where no path exists. Solved exactly by
/// successive shortest augmenting paths on the bipartite network.
/// Throws InfeasibleError when some collected quantity cannot be placed.
FlowPlan route_flows(const std::vector<double>& collected,
                     const std::vector<std::vector<double>>& ship_cost,
                     const std::vector<double>& capacity);

/// Same routing, but ships as much as fits (a minimum-cost maximum flow)
/// instead of failing; `shortfall[i]` receives each center's unplaced
/// quantity.
FlowPlan route_flows_best_effort(const std::vector<double>& collected,
                                 const std::vector<std::vector<double>>& ship_cost,
                                 const std::vector<double>& capacity,
                                 std::vector<double>& shortfall);

/// True iff every recovery center's inbound total is within capacity + 1e-9.
bool check_capacity(const FlowPlan& plan, const std::vector<double>& capacity);

namespace detail {

/// Reusable scratch for the routing core so the solver's inner loop does not
/// allocate. Flows are stored dense center-by-recovery.
struct RoutingScratch {
  std::size_t n_centers = 0;
  std::size_t n_recovery = 0;
  std::vector<double> flow;       // [center * n_recovery + recovery]
  std::vector<double> remaining;  // per center, unplaced supply
  std::vector<double> headroom;   // per recovery, capacity left
  std::vector<double> dist;       // Bellman-Ford labels
  std::vector<int> pred;          // predecessor recovery/center index

  void reset(std::size_t centers, std::size_t recovery);
};

/// Min-cost max-flow core. Returns the transport cost of the flow placed;
/// scratch.remaining holds any unplaced supply. When every center can ship
/// everything over its cheapest arc without exceeding capacity, that
/// assignment is taken directly; otherwise successive shortest augmenting
/// paths run from scratch.
double route_core(const std::vector<double>& collected,
                  const std::vector<std::vector<double>>& ship_cost,
                  const std::vector<double>& capacity, RoutingScratch& scratch);

/// Reads the dense flows out of routing scratch into a FlowPlan.
FlowPlan plan_from_scratch(const RoutingScratch& scratch, double cost);

}  // namespace detail

}  // namespace revlog
