#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace revlog {

/// One rung of the quality ladder: the fraction of returns good enough to
/// remanufacture at this cut-off and the processing-cost multiplier.
struct QualityLevel {
  double beta = 0.0;  // remanufactured fraction, in [0,1]
  double h = 0.0;     // remanufacturing cost factor, >= 0
};

/// A return-quantity scenario. Either carries concrete per-node quantities or
/// a uniform(lo,hi) range still waiting to be realized.
struct Scenario {
  double prob = 0.0;
  std::optional<std::pair<double, double>> range;  // uniform bounds, if unrealized
  std::vector<double> quantities;                  // per node, empty until realized

  bool realized(std::size_t n_nodes) const { return quantities.size() == n_nodes; }
};

/// Full problem description: network topology, costs, quality ladder and the
/// scenario set. Immutable after construction; safe to share across threads.
///
/// Missing arcs (no path between a node and a center, or a center and a
/// recovery site) are stored as NaN in the cost matrices; the existence
/// indicators are derived from presence, not from zero cost.
struct Instance {
  std::vector<std::string> nodes;
  std::vector<std::string> centers;
  std::vector<std::string> recovery_centers;

  std::vector<std::vector<double>> travel_cost;  // [node][center], NaN = no arc
  std::vector<std::vector<double>> ship_cost;    // [center][recovery], NaN = no arc
  std::vector<double> fixed_cost;                // per center
  std::vector<double> utility;                   // per node, competitor attraction mass
  std::vector<double> capacity;                  // per recovery center

  double reman_value = 0.0;      // revenue per remanufactured unit
  double scrap_value = 0.0;      // revenue per scrapped unit
  double reman_fixed_cost = 0.0; // per-unit remanufacturing cost before quality scaling

  std::vector<QualityLevel> quality;
  std::vector<Scenario> scenarios;

  std::size_t n_nodes() const { return nodes.size(); }
  std::size_t n_centers() const { return centers.size(); }
  std::size_t n_recovery() const { return recovery_centers.size(); }
  std::size_t n_scenarios() const { return scenarios.size(); }
  std::size_t n_levels() const { return quality.size(); }

  bool travel_arc(std::size_t node, std::size_t center) const;
  bool ship_arc(std::size_t center, std::size_t recovery) const;
  bool reachable(std::size_t node) const;
  std::vector<std::size_t> unreachable_nodes() const;

  bool fully_realized() const;
  double quantity(std::size_t node, std::size_t scenario) const {
    return scenarios[scenario].quantities[node];
  }

  bool operator==(const Instance& other) const;
};

/// Raised when a document cannot be read as an instance at all.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a structurally well-formed instance violates its invariants.
/// Carries every violation found, not just the first.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// Checks all instance invariants; throws ValidationError listing every
/// violation. Unreachable nodes are not an error (they just cannot be served).
void validate(const Instance& instance);

Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
std::string serialize_instance(const Instance& instance);

enum class ScenarioMode { midpoint, sample };

/// Turns uniform scenario specs into concrete quantities. midpoint yields
/// (lo+hi)/2 for every node; sample draws uniformly with the seeded generator
/// and is bit-for-bit reproducible for a fixed seed. Already-realized
/// scenarios pass through unchanged.
std::vector<Scenario> realize_scenarios(const std::vector<Scenario>& specs,
                                        std::size_t n_nodes, ScenarioMode mode,
                                        std::uint64_t seed);

/// Convenience wrapper returning a fully realized copy of the instance.
Instance realize(const Instance& instance, ScenarioMode mode, std::uint64_t seed);

}  // namespace revlog
