#include "revlog/choice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace revlog {

double attraction_fraction(double incentive, double travel_cost, double utility) {
  if (!(utility > 0.0))
    throw std::invalid_argument("attraction_fraction: utility must be positive");
  // e^(v-d) / (e^(v-d) + u) = sigmoid((v-d) - log u)
  return detail::sigmoid((incentive - travel_cost) - std::log(utility));
}

DemandSplit demand_split(double quantity, double beta, double reman_price,
                         double scrap_price, double travel_cost, double utility,
                         bool path_active) {
  if (!path_active) return {0.0, 0.0};
  DemandSplit out;
  if (beta > 0.0)
    out.reman = quantity * beta * attraction_fraction(reman_price, travel_cost, utility);
  if (beta < 1.0)
    out.scrap =
        quantity * (1.0 - beta) * attraction_fraction(scrap_price, travel_cost, utility);
  return out;
}

double DemandTable::total_reman() const {
  double s = 0.0;
  for (const auto& c : cells) s += c.reman;
  return s;
}

double DemandTable::total_scrap() const {
  double s = 0.0;
  for (const auto& c : cells) s += c.scrap;
  return s;
}

std::vector<double> DemandTable::collected() const {
  std::vector<double> out(n_centers, 0.0);
  for (std::size_t k = 0; k < n_nodes; ++k)
    for (std::size_t i = 0; i < n_centers; ++i) out[i] += at(k, i).reman;
  return out;
}

DemandTable demand_table(const Instance& inst, const Design& design,
                         const PriceVector& prices, std::size_t scenario) {
  check_design(inst, design);
  DemandTable table;
  table.n_nodes = inst.n_nodes();
  table.n_centers = inst.n_centers();
  table.cells.assign(table.n_nodes * table.n_centers, DemandCell{});

  const double beta = inst.quality[design.cutoff].beta;
  for (std::size_t k = 0; k < inst.n_nodes(); ++k) {
    if (!design.serves(k)) continue;
    const auto i = std::size_t(design.assignment[k]);
    const double d = inst.travel_cost[k][i];
    const double u = inst.utility[k];
    const double R = inst.quantity(k, scenario);
    DemandCell& cell = table.at(k, i);
    if (beta > 0.0) {
      cell.x_reman = attraction_fraction(prices.reman[k], d, u);
      cell.reman = R * beta * cell.x_reman;
    }
    if (beta < 1.0) {
      cell.x_scrap = attraction_fraction(prices.scrap[k], d, u);
      cell.scrap = R * (1.0 - beta) * cell.x_scrap;
    }
  }
  return table;
}

}  // namespace revlog
