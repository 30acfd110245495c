#pragma once

#include <cstdint>
#include <vector>

#include "revlog/instance.hpp"

namespace revlog {

/// Strict price bounds are closed with this margin: an incentive on an active
/// arc must exceed the travel cost by at least kPriceMargin.
inline constexpr double kPriceMargin = 1e-6;

/// First-stage binary decisions: which centers open, which center (if any)
/// serves each node, and the selected quality cut-off.
struct Design {
  std::vector<std::uint8_t> open;  // per center
  std::vector<int> assignment;     // per node; -1 = unserved
  std::size_t cutoff = 0;          // index into the quality ladder

  static Design empty(const Instance& inst);

  std::size_t n_open() const;
  bool is_empty() const;
  bool serves(std::size_t node) const { return assignment[node] >= 0; }

  /// Total order used to break objective ties: fewer open centers, then lower
  /// cut-off, then lexicographic (open mask, assignment) encoding.
  bool tie_before(const Design& other) const;

  bool operator==(const Design& other) const = default;
};

/// Throws ValidationError if the design violates its structural invariants
/// against the instance: assignments only to open centers over existing arcs,
/// at most one center per node, cut-off within the ladder.
void check_design(const Instance& inst, const Design& design);

/// Per-node incentives. NaN marks an absent coordinate: nodes that are not
/// served, and the price type made irrelevant by the cut-off (no reman price
/// when beta = 0, no scrap price when beta = 1).
struct PriceVector {
  std::vector<double> reman;  // per node
  std::vector<double> scrap;  // per node

  static PriceVector absent(std::size_t n_nodes);

  bool has_reman(std::size_t node) const;
  bool has_scrap(std::size_t node) const;
};

/// Verifies price-vector invariants for a design: every present price exceeds
/// the active arc's travel cost by kPriceMargin and respects the value ceiling
/// (reman_value for reman prices, scrap_value for scrap prices); prices are
/// present exactly where the design requires them.
void check_prices(const Instance& inst, const Design& design, const PriceVector& prices);

}  // namespace revlog
