#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "revlog/design.hpp"
#include "revlog/flow.hpp"
#include "revlog/instance.hpp"
#include "revlog/risk.hpp"

namespace revlog::detail {

inline constexpr std::size_t kNoCoord = std::numeric_limits<std::size_t>::max();

/// One free price variable of a design: either v_r or v_s of a served node,
/// boxed to [travel cost + margin, item value].
struct PriceCoord {
  std::size_t node = 0;
  bool reman = true;
  double lo = 0.0;
  double hi = 0.0;
};

/// The single evaluation path behind mean_risk_objective, price optimization,
/// and the stochastic metrics. Everything that reports an objective value for
/// a (design, prices) pair funnels through here, which keeps objectives from
/// different entry points bitwise comparable.
///
/// Precomputes per-design data once; objective() is then cheap enough for the
/// optimizer's inner loop and allocation-free.
class Evaluator {
 public:
  /// Validates params and design; requires concrete scenario quantities.
  Evaluator(const Instance& inst, const Design& design, const RiskParams& params);

  const std::vector<PriceCoord>& coords() const { return coords_; }

  /// False when some coordinate's box is empty (travel cost + margin exceeds
  /// the item value); such a design admits no feasible prices.
  bool box_feasible() const { return box_feasible_; }

  /// Objective at coordinate vector x. Routing shortfalls yield a large
  /// negative penalty scaled by the excess instead of an exception.
  double objective(const std::vector<double>& x);

  /// Full evaluation with itemized terms; optionally extracts per-scenario
  /// flow plans. Throws InfeasibleError when routing cannot place all flow.
  Evaluation evaluate(const std::vector<double>& x,
                      std::vector<FlowPlan>* plans = nullptr);

  PriceVector prices(const std::vector<double>& x) const;
  std::vector<double> coordinates(const PriceVector& pv) const;

 private:
  double core(const std::vector<double>& x, Evaluation* out,
              std::vector<FlowPlan>* plans, bool& feasible);

  const Instance* inst_;
  Design design_;
  RiskParams params_;

  double beta_ = 0.0;
  double h_ = 0.0;
  double f_total_ = 0.0;
  bool box_feasible_ = true;

  // Served-node data, index s over served nodes in ascending node order.
  std::vector<std::size_t> node_;
  std::vector<std::size_t> center_;
  std::vector<double> d_;
  std::vector<double> logu_;
  std::vector<std::size_t> coord_r_;  // kNoCoord when the stream is absent
  std::vector<std::size_t> coord_s_;
  std::vector<double> quantity_;  // [theta * n_served + s]
  std::vector<double> probs_;

  std::vector<PriceCoord> coords_;

  // Reused per evaluation.
  std::vector<double> xr_, xs_, collected_, losses_;
  RoutingScratch route_;
  CvarScratch cvar_;
};

}  // namespace revlog::detail
