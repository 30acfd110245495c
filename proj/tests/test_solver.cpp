#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "revlog/oracle.hpp"
#include "revlog/solver.hpp"

using namespace revlog;

namespace {

Instance reference_shape() {
  // Same topology as the bundled six-node document, scenario-free details
  // trimmed: only the design space matters here.
  Instance m;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  m.nodes = {"k1", "k2", "k3", "k4", "k5", "k6"};
  m.centers = {"i1", "i2", "i3"};
  m.recovery_centers = {"j1", "j2"};
  m.travel_cost = {{1.7, nan, 1.9},  {1.5, 1.13, nan}, {nan, 1.9, nan},
                   {1.15, nan, 1.1}, {nan, 1.9, 1.12}, {1.12, 1.13, nan}};
  m.ship_cost = {{0.8, 1.4}, {1.2, 0.7}, {0.5, 1.9}};
  m.fixed_cost = {1000, 1200, 1100};
  m.utility = {40, 60, 60, 40, 80, 40};
  m.capacity = {2000, 2000};
  m.reman_value = 50;
  m.scrap_value = 5;
  m.reman_fixed_cost = 20;
  m.quality = {{0.0, 0.05}, {0.2, 0.1}, {0.4, 0.15}, {0.8, 0.4}, {1.0, 0.5}};
  Scenario s;
  s.prob = 1.0;
  s.quantities = {750, 750, 750, 750, 750, 750};
  m.scenarios = {s};
  return m;
}

}  // namespace

TEST_CASE("design space enumerates exactly the valid designs") {
  const std::vector<Instance> micros = oracle::micro_instances();
  {
    // One node, one center, one level: empty, open-idle, open-serving.
    const DesignSpace space(micros[0]);
    CHECK(space.size() == 3);
    const Design empty = space.at(0);
    CHECK(empty.open == std::vector<std::uint8_t>{0});
    CHECK(empty.assignment == std::vector<int>{-1});
  }
  {
    // Six-node reference shape: 838 assignment combinations across the seven
    // center subsets, five cut-off levels each, plus the empty design.
    const DesignSpace space(reference_shape());
    CHECK(space.size() == 4191);
  }
  {
    // Every produced design passes its own invariant check and is unique.
    const Instance& inst = micros[13];  // 2 nodes, 2 centers, 2 levels
    const DesignSpace space(inst);
    std::set<std::vector<int>> seen;
    for (std::size_t idx = 0; idx < space.size(); ++idx) {
      const Design d = space.at(idx);
      CHECK_NOTHROW(check_design(inst, d));
      std::vector<int> key = {int(d.cutoff)};
      for (auto o : d.open) key.push_back(int(o));
      for (auto a : d.assignment) key.push_back(a);
      CHECK(seen.insert(key).second);
    }
  }
}

TEST_CASE("design space rejects assignments to closed or unlinked centers") {
  const std::vector<Instance> micros = oracle::micro_instances();
  const Instance& inst = micros[11];  // node 2 reachable only from center 2
  const DesignSpace space(inst);
  for (std::size_t idx = 0; idx < space.size(); ++idx) {
    const Design d = space.at(idx);
    for (std::size_t k = 0; k < inst.n_nodes(); ++k) {
      if (d.assignment[k] < 0) continue;
      const auto i = std::size_t(d.assignment[k]);
      CHECK(d.open[i] == 1);
      CHECK(inst.travel_arc(k, i));
    }
  }
}

TEST_CASE("price optimization beats random probing") {
  const std::vector<Instance> micros = oracle::micro_instances();
  const Instance& inst = micros[0];
  const RiskParams params{0.8, 0.5};
  Design design;
  design.open = {1};
  design.assignment = {0};
  design.cutoff = 0;

  const OptimizedPrices best = optimize_prices(inst, design, params);
  CHECK(best.evaluation.objective > 0.0);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ur(0.5 + 2e-6, 3.0), us(0.5 + 2e-6, 1.5);
  for (int i = 0; i < 300; ++i) {
    PriceVector probe = PriceVector::absent(1);
    probe.reman = {ur(rng)};
    probe.scrap = {us(rng)};
    const Evaluation eval = mean_risk_objective(inst, design, probe, params);
    CHECK(best.evaluation.objective >= eval.objective - 1e-5);
  }
}

TEST_CASE("solver matches the exhaustive grid oracle") {
  const std::vector<Instance> micros = oracle::micro_instances();
  const RiskParams params{0.8, 0.5};
  // A fast cross-section; the full sweep runs in the acceptance suite.
  for (std::size_t idx : {std::size_t(0), std::size_t(4), std::size_t(15),
                          std::size_t(18), std::size_t(19)}) {
    CAPTURE(idx);
    const Solution sol = solve(micros[idx], params);
    const oracle::GridSolution grid =
        oracle::grid_solve(micros[idx], params, 0.01);
    CHECK(sol.evaluation.objective >= grid.objective - 0.01);
    CHECK(sol.evaluation.objective <= grid.objective + grid.gap + 0.01);
  }
}

TEST_CASE("solver reproduces frozen oracle objectives") {
  // grid_solve at price step 0.001, frozen: micro 0 and micro 1 at
  // alpha 0.8, lambda 0.5.
  const std::vector<Instance> micros = oracle::micro_instances();
  const RiskParams params{0.8, 0.5};
  const double frozen_m0 = 6.3749964374962484;
  const double frozen_m1 = 7.0049949524953465;
  CHECK(std::fabs(solve(micros[0], params).evaluation.objective - frozen_m0) <=
        0.01);
  CHECK(std::fabs(solve(micros[1], params).evaluation.objective - frozen_m1) <=
        0.01);
}

TEST_CASE("hopeless economics select the empty design") {
  const std::vector<Instance> micros = oracle::micro_instances();
  {
    const Solution sol = solve(micros[6], RiskParams{0.8, 0.5});  // f = 1e6
    CHECK(sol.design.open == std::vector<std::uint8_t>{0});
    CHECK(sol.evaluation.objective == 0.0);
    CHECK_FALSE(sol.prices.has_reman(0));
    CHECK_FALSE(sol.prices.has_scrap(0));
  }
  {
    // The only node is unreachable; opening would be pure cost.
    const Solution sol = solve(micros[7], RiskParams{0.0, 0.0});
    CHECK(sol.design.open == std::vector<std::uint8_t>{0});
    CHECK(sol.evaluation.objective == 0.0);
  }
}

TEST_CASE("infeasible price boxes are skipped or reported") {
  // Travel cost above both product values: serving is impossible.
  Instance inst = oracle::micro_instances()[0];
  inst.travel_cost[0][0] = 5.0;
  const RiskParams params{0.5, 0.0};

  Design serving;
  serving.open = {1};
  serving.assignment = {0};
  serving.cutoff = 0;
  CHECK_THROWS_AS(optimize_prices(inst, serving, params), InfeasibleError);

  const Solution sol = solve(inst, params);
  CHECK(sol.design.open == std::vector<std::uint8_t>{0});
}

TEST_CASE("solve validates its inputs") {
  const Instance inst = oracle::micro_instances()[0];
  CHECK_THROWS_AS(solve(inst, RiskParams{1.5, 0.0}), ValidationError);
  CHECK_THROWS_AS(solve(inst, RiskParams{0.5, -2.0}), ValidationError);

  Instance ranged = inst;
  ranged.scenarios[0].quantities.clear();
  ranged.scenarios[0].range = std::make_pair(5.0, 15.0);
  CHECK_THROWS_AS(solve(ranged, RiskParams{0.5, 0.0}), ValidationError);
}

TEST_CASE("solve is deterministic and thread-count invariant") {
  const std::vector<Instance> micros = oracle::micro_instances();
  const Instance& inst = micros[14];  // the maximal micro
  const RiskParams params{0.9, 1.0};

  // Absent prices are NaN, so compare bit patterns rather than values.
  auto same = [](const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::isnan(x[i]) != std::isnan(y[i])) return false;
      if (!std::isnan(x[i]) && x[i] != y[i]) return false;
    }
    return true;
  };

  const Solution a = solve(inst, params);
  const Solution b = solve(inst, params);
  CHECK(a.evaluation.objective == b.evaluation.objective);
  CHECK(a.design.open == b.design.open);
  CHECK(a.design.assignment == b.design.assignment);
  CHECK(a.design.cutoff == b.design.cutoff);
  CHECK(same(a.prices.reman, b.prices.reman));
  CHECK(same(a.prices.scrap, b.prices.scrap));

  SolverConfig one;
  one.threads = 1;
  SolverConfig four;
  four.threads = 4;
  const Solution c = solve(inst, params, one);
  const Solution d = solve(inst, params, four);
  CHECK(c.evaluation.objective == d.evaluation.objective);
  CHECK(c.design.open == d.design.open);
  CHECK(c.design.assignment == d.design.assignment);
  CHECK(same(c.prices.reman, d.prices.reman));
  CHECK(same(c.prices.scrap, d.prices.scrap));
}

TEST_CASE("REVLOG_THREADS caps the thread count") {
  setenv("REVLOG_THREADS", "3", 1);
  CHECK(effective_threads(8) == 3);
  CHECK(effective_threads(2) == 2);
  setenv("REVLOG_THREADS", "not-a-number", 1);
  CHECK(effective_threads(2) == 2);
  unsetenv("REVLOG_THREADS");
  CHECK(effective_threads(5) == 5);
}
