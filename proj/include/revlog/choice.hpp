#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "revlog/design.hpp"
#include "revlog/instance.hpp"

namespace revlog {

namespace detail {
/// Logistic function evaluated so that only negative arguments are ever
/// exponentiated; never overflows.
inline double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}
}  // namespace detail

/// Fraction of a node's customers choosing the center: e^(v-d) / (e^(v-d) + u).
/// Computed in a saturating form that never overflows for large |v-d|.
/// Throws std::invalid_argument if u <= 0.
double attraction_fraction(double incentive, double travel_cost, double utility);

struct DemandSplit {
  double reman = 0.0;
  double scrap = 0.0;
};

/// Quantity split of a node's returns between remanufacture and scrap for one
/// active arc. An inactive path yields exactly (0, 0).
DemandSplit demand_split(double quantity, double beta, double reman_price,
                         double scrap_price, double travel_cost, double utility,
                         bool path_active);

struct DemandCell {
  double x_reman = 0.0;  // attraction fraction at the reman incentive
  double x_scrap = 0.0;  // attraction fraction at the scrap incentive
  double reman = 0.0;    // quantity collected for remanufacture
  double scrap = 0.0;    // quantity collected for scrap
};

/// Node-by-center demand for a single scenario. Cells off the design's active
/// arcs are exactly zero.
struct DemandTable {
  std::size_t n_nodes = 0;
  std::size_t n_centers = 0;
  std::vector<DemandCell> cells;  // node-major

  const DemandCell& at(std::size_t node, std::size_t center) const {
    return cells[node * n_centers + center];
  }
  DemandCell& at(std::size_t node, std::size_t center) {
    return cells[node * n_centers + center];
  }

  double total_reman() const;
  double total_scrap() const;
  /// Collected remanufacturing quantity per center.
  std::vector<double> collected() const;
};

/// Populates the demand table for one scenario under the given design and
/// prices. Throws ValidationError on a design violating single assignment.
DemandTable demand_table(const Instance& inst, const Design& design,
                         const PriceVector& prices, std::size_t scenario);

}  // namespace revlog
