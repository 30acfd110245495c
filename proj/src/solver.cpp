#include "revlog/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "revlog/detail/evaluator.hpp"
#include "revlog/detail/parallel.hpp"

namespace revlog {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxDesigns = 50'000'000;

}  // namespace

std::size_t effective_threads(std::size_t requested) {
  std::size_t n =
      requested ? requested
                : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("REVLOG_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && cap > 0) n = std::min(n, std::size_t(cap));
  }
  return std::max<std::size_t>(1, n);
}

DesignSpace::DesignSpace(const Instance& inst) : inst_(&inst) {
  const std::size_t m = inst.n_centers();
  if (m > 24)
    throw ValidationError({"too many centers for exact enumeration"});

  size_ = 1;  // the empty design
  const std::uint32_t top = std::uint32_t(1) << m;
  for (std::uint32_t mask = 1; mask < top; ++mask) {
    Block block;
    block.mask = mask;
    block.base = size_;
    block.options.resize(inst.n_nodes());
    for (std::size_t k = 0; k < inst.n_nodes(); ++k) {
      auto& opts = block.options[k];
      opts.push_back(-1);
      for (std::size_t i = 0; i < m; ++i)
        if ((mask >> i) & 1u && inst.travel_arc(k, i)) opts.push_back(int(i));
      block.combos *= opts.size();
      if (block.combos > kMaxDesigns)
        throw ValidationError({"design space too large for exact enumeration"});
    }
    const std::size_t block_size = block.combos * inst.n_levels();
    if (block_size / inst.n_levels() != block.combos ||
        size_ > kMaxDesigns - block_size)
      throw ValidationError({"design space too large for exact enumeration"});
    size_ += block_size;
    blocks_.push_back(std::move(block));
  }
}

Design DesignSpace::at(std::size_t index) const {
  if (index >= size_) throw std::out_of_range("design index out of range");
  Design design;
  design.open.assign(inst_->n_centers(), 0);
  design.assignment.assign(inst_->n_nodes(), -1);
  design.cutoff = 0;
  if (index == 0) return design;

  // Blocks are sorted by base; find the one containing index.
  std::size_t lo = 0, hi = blocks_.size();
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (blocks_[mid].base <= index)
      lo = mid;
    else
      hi = mid;
  }
  const Block& block = blocks_[lo];

  for (std::size_t i = 0; i < inst_->n_centers(); ++i)
    design.open[i] = std::uint8_t((block.mask >> i) & 1u);

  std::size_t local = index - block.base;
  design.cutoff = local % inst_->n_levels();
  std::size_t combo = local / inst_->n_levels();
  for (std::size_t k = 0; k < inst_->n_nodes(); ++k) {
    const auto& opts = block.options[k];
    design.assignment[k] = opts[combo % opts.size()];
    combo /= opts.size();
  }
  return design;
}

namespace {

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2

/// Maximizes the objective along coordinate c over [lo, hi], starting from
/// the incumbent value at the current x[c]; never returns a worse point.
double line_search(detail::Evaluator& ev, std::vector<double>& x,
                   std::size_t c, double lo, double hi,
                   const SolverConfig& cfg, double incumbent) {
  double best_t = x[c];
  double best_v = incumbent;
  if (hi <= lo) {
    x[c] = best_t;
    return best_v;
  }

  // Coarse scan to bracket the maximum; endpoints included so a feasible
  // left-interval (capacity caps demand from above) is never missed.
  const std::size_t points = std::max<std::size_t>(cfg.scan_points, 3);
  std::size_t best_g = 0;
  double best_scan = kNegInf;
  for (std::size_t g = 0; g < points; ++g) {
    const double t = lo + (hi - lo) * double(g) / double(points - 1);
    x[c] = t;
    const double v = ev.objective(x);
    if (v > best_scan) {
      best_scan = v;
      best_g = g;
    }
    if (v > best_v) {
      best_v = v;
      best_t = t;
    }
  }

  const double step = (hi - lo) / double(points - 1);
  double a = lo + step * double(best_g == 0 ? 0 : best_g - 1);
  double b = lo + step * double(std::min(best_g + 1, points - 1));

  double tc = b - kGolden * (b - a);
  double td = a + kGolden * (b - a);
  x[c] = tc;
  double fc = ev.objective(x);
  if (fc > best_v) {
    best_v = fc;
    best_t = tc;
  }
  x[c] = td;
  double fd = ev.objective(x);
  if (fd > best_v) {
    best_v = fd;
    best_t = td;
  }
  while (b - a > cfg.line_tol) {
    if (fc > fd) {
      b = td;
      td = tc;
      fd = fc;
      tc = b - kGolden * (b - a);
      x[c] = tc;
      fc = ev.objective(x);
      if (fc > best_v) {
        best_v = fc;
        best_t = tc;
      }
    } else {
      a = tc;
      tc = td;
      fc = fd;
      td = a + kGolden * (b - a);
      x[c] = td;
      fd = ev.objective(x);
      if (fd > best_v) {
        best_v = fd;
        best_t = td;
      }
    }
  }
  x[c] = best_t;
  return best_v;
}

struct AscentResult {
  std::vector<double> x;
  double value = kNegInf;
};

AscentResult ascend(detail::Evaluator& ev, const SolverConfig& cfg) {
  const auto& coords = ev.coords();
  const std::size_t n = coords.size();
  AscentResult best;
  if (n == 0) {
    best.x.clear();
    best.value = ev.objective(best.x);
    return best;
  }

  std::vector<double> x(n);
  const std::size_t starts = std::max<std::size_t>(cfg.starts, 1);
  for (std::size_t start = 0; start < starts; ++start) {
    const double frac = double(start + 1) / double(starts + 1);
    for (std::size_t c = 0; c < n; ++c)
      x[c] = coords[c].lo + frac * (coords[c].hi - coords[c].lo);
    double value = ev.objective(x);
    for (std::size_t cycle = 0; cycle < cfg.max_cycles; ++cycle) {
      const double before = value;
      for (std::size_t c = 0; c < n; ++c)
        value = line_search(ev, x, c, coords[c].lo, coords[c].hi, cfg, value);
      if (std::abs(value - before) < cfg.cycle_tol) break;
    }
    if (value > best.value) {
      best.value = value;
      best.x = x;
    }
  }
  return best;
}

}  // namespace

OptimizedPrices optimize_prices(const Instance& inst, const Design& design,
                                const RiskParams& params,
                                const SolverConfig& config) {
  detail::Evaluator ev(inst, design, params);
  if (!ev.box_feasible())
    throw InfeasibleError(
        "no feasible prices: travel cost reaches the item value for a served "
        "node");
  const AscentResult run = ascend(ev, config);
  const PriceVector prices = ev.prices(run.x);

  detail::Evaluator fresh(inst, design, params);
  OptimizedPrices out;
  out.prices = prices;
  out.evaluation = fresh.evaluate(fresh.coordinates(prices));
  return out;
}

Solution solve(const Instance& inst, const RiskParams& params,
               const SolverConfig& config) {
  validate(inst);
  validate(params);
  if (!inst.fully_realized())
    throw ValidationError({"scenario quantities are not realized"});

  const DesignSpace space(inst);
  std::vector<double> objectives(space.size(), kNegInf);

  const std::size_t threads = effective_threads(config.threads);
  detail::parallel_for(space.size(), threads, 8, [&](std::size_t index) {
    try {
      const Design design = space.at(index);
      detail::Evaluator ev(inst, design, params);
      if (!ev.box_feasible()) return;
      objectives[index] = ascend(ev, config).value;
    } catch (const InfeasibleError&) {
      // stays -inf: rejected design
    }
  });

  double best = kNegInf;
  for (double v : objectives) best = std::max(best, v);

  // Among objectives within 1e-9 of the best, take the tie-order minimum;
  // the scan is sequential so the winner is independent of thread timing.
  bool have = false;
  Design winner;
  for (std::size_t index = 0; index < space.size(); ++index) {
    if (objectives[index] < best - 1e-9) continue;
    Design candidate = space.at(index);
    if (!have || candidate.tie_before(winner)) {
      winner = std::move(candidate);
      have = true;
    }
  }

  detail::Evaluator ev(inst, winner, params);
  const AscentResult run = ascend(ev, config);
  const PriceVector prices = ev.prices(run.x);

  Solution solution;
  solution.design = winner;
  solution.prices = prices;
  detail::Evaluator fresh(inst, winner, params);
  solution.evaluation =
      fresh.evaluate(fresh.coordinates(prices), &solution.flows);
  return solution;
}

}  // namespace revlog
