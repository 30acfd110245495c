#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "revlog/design.hpp"
#include "revlog/instance.hpp"
#include "revlog/risk.hpp"

/// Brute-force reference implementations, written independently of the main
/// library: naive logit, greedy routing on deliberately restricted cases,
/// direct objective summation, and grid search instead of line search. Used
/// by tests and the `check` subcommand to cross-validate the solver; never
/// called from the solving path itself.
namespace revlog::oracle {

/// Raised instead of silently truncating when a requested grid would need
/// more evaluations than the budget allows.
class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CVaR by direct minimization of eta + (1/(1-alpha)) * E(L-eta)+ over an
/// eta grid spanning [min loss, max loss] at eta_step (endpoints included).
/// Differs from the true CVaR by at most eta_step / (1 - alpha).
double cvar_grid_min(const LossDistribution& dist, double alpha,
                     double eta_step);

struct GridSolution {
  Design design;
  PriceVector prices;
  double objective = 0.0;
  /// Lipschitz-style bound on how far the best grid point can sit below the
  /// continuous optimum over the winning design's price box.
  double gap = 0.0;
  std::size_t evaluations = 0;
};

/// Exhaustive search: every design, crossed with a Cartesian grid over each
/// price coordinate's [travel cost + margin, value] interval at price_step
/// (upper endpoint included). The evaluation count is computed up front;
/// exceeding the budget raises BudgetExceededError. Routing inside the
/// oracle is exact only on the cases it accepts (a single collection center,
/// or capacity slack enough that every center can use its cheapest arc) and
/// refuses anything else; the bundled micro instances satisfy this by
/// construction.
GridSolution grid_solve(const Instance& inst, const RiskParams& params,
                        double price_step,
                        std::size_t budget = 100'000'000);

/// Minimum routing cost over every split of integer supplies at unit
/// granularity, honoring integer capacities and missing arcs. nullopt when
/// no feasible split exists.
std::optional<double> route_cost_enumerated(
    const std::vector<long>& supplies,
    const std::vector<std::vector<double>>& ship_cost,
    const std::vector<long>& capacity);

/// Random discrete loss distribution: 2 to max_atoms atoms, losses uniform
/// in [0, 200], normalized positive probabilities.
LossDistribution random_distribution(std::mt19937_64& rng,
                                     std::size_t max_atoms = 20);

/// The bundled micro instances (at most 2 nodes, 2 centers, 2 scenarios,
/// 2 quality levels each), sized so grid_solve at step 0.001 stays within
/// the default budget. All scenarios come pre-realized.
std::vector<Instance> micro_instances();

}  // namespace revlog::oracle
