#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "revlog/design.hpp"
#include "revlog/flow.hpp"
#include "revlog/instance.hpp"
#include "revlog/risk.hpp"

namespace revlog {

struct SolverConfig {
  std::size_t starts = 5;       // multi-start count for price optimization
  std::size_t scan_points = 9;  // coarse bracketing probes per line search
  std::size_t max_cycles = 60;  // coordinate-ascent cycle cap
  double cycle_tol = 1e-7;      // stop when a full cycle improves less
  double line_tol = 1e-4;       // golden-section interval width, price units
  std::size_t threads = 0;      // 0 = hardware threads; REVLOG_THREADS caps
};

/// Applies the default thread count and the REVLOG_THREADS cap.
std::size_t effective_threads(std::size_t requested);

/// Every feasible design of an instance, indexable without materializing the
/// list: the empty design (index 0), then for each non-empty center subset
/// every per-node assignment choice (unserved or a reachable open center)
/// crossed with every quality cut-off.
class DesignSpace {
 public:
  explicit DesignSpace(const Instance& inst);

  std::size_t size() const { return size_; }
  Design at(std::size_t index) const;

 private:
  struct Block {
    std::uint32_t mask = 0;   // which centers are open
    std::size_t base = 0;     // first design index of the block
    std::size_t combos = 1;   // assignment combinations in the block
    std::vector<std::vector<int>> options;  // per node: -1, then open centers
  };

  const Instance* inst_;
  std::vector<Block> blocks_;
  std::size_t size_ = 0;
};

struct OptimizedPrices {
  PriceVector prices;
  Evaluation evaluation;
};

/// Maximizes the mean-risk objective over the design's free price
/// coordinates: multi-start coordinate ascent with bracketed golden-section
/// line searches, deterministic for fixed configuration. Throws
/// InfeasibleError when the design admits no feasible prices.
OptimizedPrices optimize_prices(const Instance& inst, const Design& design,
                                const RiskParams& params,
                                const SolverConfig& config = {});

struct Solution {
  Design design;
  PriceVector prices;
  std::vector<FlowPlan> flows;  // per scenario
  Evaluation evaluation;
};

/// Exact enumeration over DesignSpace with per-design price optimization.
/// Objective ties within 1e-9 break toward fewer open centers, lower cut-off,
/// then lexicographic design encoding; the result does not depend on thread
/// count. Never fails on a valid realized instance (the empty design is
/// always feasible).
Solution solve(const Instance& inst, const RiskParams& params,
               const SolverConfig& config = {});

}  // namespace revlog
