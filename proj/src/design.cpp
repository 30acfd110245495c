#include "revlog/design.hpp"

#include <cmath>
#include <string>

namespace revlog {

Design Design::empty(const Instance& inst) {
  Design d;
  d.open.assign(inst.n_centers(), 0);
  d.assignment.assign(inst.n_nodes(), -1);
  d.cutoff = 0;
  return d;
}

std::size_t Design::n_open() const {
  std::size_t n = 0;
  for (auto o : open) n += o != 0;
  return n;
}

bool Design::is_empty() const { return n_open() == 0; }

bool Design::tie_before(const Design& other) const {
  const std::size_t a = n_open(), b = other.n_open();
  if (a != b) return a < b;
  if (cutoff != other.cutoff) return cutoff < other.cutoff;
  if (open != other.open) return open < other.open;
  return assignment < other.assignment;
}

void check_design(const Instance& inst, const Design& design) {
  std::vector<std::string> issues;
  if (design.open.size() != inst.n_centers())
    issues.push_back("design.open: wrong length");
  if (design.assignment.size() != inst.n_nodes())
    issues.push_back("design.assignment: wrong length");
  if (design.cutoff >= inst.n_levels())
    issues.push_back("design.cutoff: outside quality ladder");
  if (!issues.empty()) throw ValidationError(std::move(issues));

  for (std::size_t k = 0; k < inst.n_nodes(); ++k) {
    const int i = design.assignment[k];
    if (i < 0) continue;
    if (std::size_t(i) >= inst.n_centers()) {
      issues.push_back("assignment[" + std::to_string(k) + "]: no such center");
      continue;
    }
    if (!design.open[std::size_t(i)])
      issues.push_back("assignment[" + std::to_string(k) + "]: center " +
                       std::to_string(i) + " is closed");
    if (!inst.travel_arc(k, std::size_t(i)))
      issues.push_back("assignment[" + std::to_string(k) + "]: no arc to center " +
                       std::to_string(i));
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

PriceVector PriceVector::absent(std::size_t n_nodes) {
  PriceVector p;
  p.reman.assign(n_nodes, std::nan(""));
  p.scrap.assign(n_nodes, std::nan(""));
  return p;
}

bool PriceVector::has_reman(std::size_t node) const {
  return node < reman.size() && !std::isnan(reman[node]);
}

bool PriceVector::has_scrap(std::size_t node) const {
  return node < scrap.size() && !std::isnan(scrap[node]);
}

void check_prices(const Instance& inst, const Design& design,
                  const PriceVector& prices) {
  std::vector<std::string> issues;
  if (prices.reman.size() != inst.n_nodes() || prices.scrap.size() != inst.n_nodes()) {
    throw ValidationError({"prices: wrong length"});
  }
  const double beta = inst.quality[design.cutoff].beta;
  for (std::size_t k = 0; k < inst.n_nodes(); ++k) {
    const bool served = design.serves(k);
    const bool want_reman = served && beta > 0.0;
    const bool want_scrap = served && beta < 1.0;
    if (prices.has_reman(k) != want_reman)
      issues.push_back("prices.reman[" + std::to_string(k) +
                       (want_reman ? "]: missing" : "]: unexpected"));
    if (prices.has_scrap(k) != want_scrap)
      issues.push_back("prices.scrap[" + std::to_string(k) +
                       (want_scrap ? "]: missing" : "]: unexpected"));
    if (!served) continue;
    const double d = inst.travel_cost[k][std::size_t(design.assignment[k])];
    if (want_reman && prices.has_reman(k)) {
      const double v = prices.reman[k];
      if (!(v >= d + kPriceMargin))
        issues.push_back("prices.reman[" + std::to_string(k) +
                         "]: below travel cost margin");
      if (!(v <= inst.reman_value))
        issues.push_back("prices.reman[" + std::to_string(k) + "]: above value ceiling");
    }
    if (want_scrap && prices.has_scrap(k)) {
      const double v = prices.scrap[k];
      if (!(v >= d + kPriceMargin))
        issues.push_back("prices.scrap[" + std::to_string(k) +
                         "]: below travel cost margin");
      if (!(v <= inst.scrap_value))
        issues.push_back("prices.scrap[" + std::to_string(k) + "]: above value ceiling");
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

}  // namespace revlog
