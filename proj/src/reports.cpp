#include "revlog/reports.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "json.hpp"

#include "revlog/detail/parallel.hpp"
#include "revlog/oracle.hpp"

namespace revlog {

namespace {

using ordered_json = nlohmann::ordered_json;

/// Shortest decimal string that round-trips the double.
std::string fmt(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string open_center_names(const Instance& inst, const Design& design) {
  std::string names;
  for (std::size_t i = 0; i < inst.n_centers(); ++i) {
    if (!design.open[i]) continue;
    if (!names.empty()) names += ';';
    names += inst.centers[i];
  }
  return names;
}

ordered_json design_json(const Instance& inst, const Design& design) {
  ordered_json j;
  ordered_json open = ordered_json::array();
  for (std::size_t i = 0; i < inst.n_centers(); ++i)
    if (design.open[i]) open.push_back(inst.centers[i]);
  j["open_centers"] = std::move(open);
  j["cutoff"] = design.cutoff;
  j["beta"] = inst.quality[design.cutoff].beta;
  j["h"] = inst.quality[design.cutoff].h;
  ordered_json assignment;
  for (std::size_t k = 0; k < inst.n_nodes(); ++k) {
    if (design.assignment[k] >= 0)
      assignment[inst.nodes[k]] = inst.centers[std::size_t(design.assignment[k])];
    else
      assignment[inst.nodes[k]] = nullptr;
  }
  j["assignment"] = std::move(assignment);
  return j;
}

ordered_json prices_json(const Instance& inst, const PriceVector& prices) {
  ordered_json j;
  for (std::size_t k = 0; k < inst.n_nodes(); ++k) {
    ordered_json node;
    if (prices.has_reman(k))
      node["reman"] = prices.reman[k];
    else
      node["reman"] = nullptr;
    if (prices.has_scrap(k))
      node["scrap"] = prices.scrap[k];
    else
      node["scrap"] = nullptr;
    j[inst.nodes[k]] = std::move(node);
  }
  return j;
}

ordered_json evaluation_json(const Evaluation& eval) {
  ordered_json j;
  j["objective"] = eval.objective;
  j["expected_profit"] = eval.expected_profit;
  j["cvar"] = eval.cvar;
  j["var_threshold"] = eval.var_threshold;
  ordered_json terms;
  terms["revenue_reman"] = eval.terms.revenue_reman;
  terms["revenue_scrap"] = eval.terms.revenue_scrap;
  terms["fixed_cost"] = eval.terms.fixed_cost;
  terms["incentive_reman"] = eval.terms.incentive_reman;
  terms["incentive_scrap"] = eval.terms.incentive_scrap;
  terms["transport_cost"] = eval.terms.transport_cost;
  terms["remanufacture_cost"] = eval.terms.remanufacture_cost;
  j["terms"] = std::move(terms);
  return j;
}

}  // namespace

std::string solution_document(const Instance& inst, const RiskParams& params,
                              const Solution& solution) {
  ordered_json doc;
  doc["alpha"] = params.alpha;
  doc["lambda"] = params.lambda;
  doc["evaluation"] = evaluation_json(solution.evaluation);
  doc["design"] = design_json(inst, solution.design);
  doc["prices"] = prices_json(inst, solution.prices);

  ordered_json scenarios = ordered_json::array();
  for (std::size_t t = 0; t < solution.flows.size(); ++t) {
    ordered_json s;
    s["prob"] = inst.scenarios[t].prob;
    s["loss"] = solution.evaluation.losses[t];
    s["excess"] = solution.evaluation.excesses[t];
    s["transport_cost"] = solution.flows[t].cost;
    ordered_json shipments = ordered_json::array();
    for (const Shipment& ship : solution.flows[t].shipments) {
      ordered_json row;
      row["from"] = inst.centers[ship.center];
      row["to"] = inst.recovery_centers[ship.recovery];
      row["quantity"] = ship.quantity;
      shipments.push_back(std::move(row));
    }
    s["shipments"] = std::move(shipments);
    scenarios.push_back(std::move(s));
  }
  doc["scenarios"] = std::move(scenarios);
  return doc.dump(2) + "\n";
}

std::string stochastic_document(const Instance& inst, const RiskParams& params,
                                const StochasticReport& report) {
  ordered_json doc;
  doc["alpha"] = params.alpha;
  doc["lambda"] = params.lambda;
  doc["mrrp"] = report.mrrp;
  doc["mrev"] = report.mrev;
  doc["mrvss"] = report.mrvss;
  doc["ev_repaired"] = report.ev_repaired;

  ordered_json stoch;
  stoch["evaluation"] = evaluation_json(report.solution.evaluation);
  stoch["design"] = design_json(inst, report.solution.design);
  stoch["prices"] = prices_json(inst, report.solution.prices);
  doc["stochastic"] = std::move(stoch);

  ordered_json ev;
  ev["evaluation"] = evaluation_json(report.ev_solution.evaluation);
  ev["design"] = design_json(inst, report.ev_solution.design);
  ev["prices"] = prices_json(inst, report.ev_solution.prices);
  doc["expected_value"] = std::move(ev);
  return doc.dump(2) + "\n";
}

SweepResult run_sweep(const Instance& inst, std::vector<double> alphas,
                      std::vector<double> lambdas,
                      const SolverConfig& config) {
  if (alphas.empty() || lambdas.empty())
    throw ValidationError({"sweep needs at least one alpha and one lambda"});
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  for (double a : alphas) validate(RiskParams{a, 0.0});
  for (double l : lambdas) validate(RiskParams{0.0, l});

  SweepResult result;
  result.cells.resize(alphas.size() * lambdas.size());
  for (std::size_t ia = 0; ia < alphas.size(); ++ia)
    for (std::size_t il = 0; il < lambdas.size(); ++il)
      result.cells[ia * lambdas.size() + il].params = {alphas[ia],
                                                       lambdas[il]};

  const std::size_t threads = effective_threads(config.threads);
  SolverConfig cell_config = config;
  std::size_t outer = 1;
  if (result.cells.size() > 1 && threads > 1) {
    cell_config.threads = 1;  // each cell single-threaded, cells in parallel
    outer = threads;
  }
  detail::parallel_for(result.cells.size(), outer, 1, [&](std::size_t i) {
    result.cells[i].report =
        compute_mrvss(inst, result.cells[i].params, cell_config);
  });
  return result;
}

std::string sweep_table_csv(const Instance& inst, const SweepResult& sweep) {
  std::ostringstream out;
  out << "alpha,lambda,open_centers,cutoff,objective,cvar,var_threshold";
  for (const std::string& node : inst.nodes)
    out << ",vr_" << csv_field(node) << ",vs_" << csv_field(node);
  out << "\n";
  for (const SweepCell& cell : sweep.cells) {
    const Solution& sol = cell.report.solution;
    out << fmt(cell.params.alpha) << ',' << fmt(cell.params.lambda) << ','
        << csv_field(open_center_names(inst, sol.design)) << ','
        << sol.design.cutoff << ',' << fmt(sol.evaluation.objective) << ','
        << fmt(sol.evaluation.cvar) << ','
        << fmt(sol.evaluation.var_threshold);
    for (std::size_t k = 0; k < inst.n_nodes(); ++k) {
      out << ',';
      if (sol.prices.has_reman(k)) out << fmt(sol.prices.reman[k]);
      out << ',';
      if (sol.prices.has_scrap(k)) out << fmt(sol.prices.scrap[k]);
    }
    out << "\n";
  }
  return out.str();
}

std::string objective_long_csv(const SweepResult& sweep) {
  std::ostringstream out;
  out << "alpha,lambda,objective\n";
  for (const SweepCell& cell : sweep.cells)
    out << fmt(cell.params.alpha) << ',' << fmt(cell.params.lambda) << ','
        << fmt(cell.report.solution.evaluation.objective) << "\n";
  return out.str();
}

std::string stochastic_metrics_csv(const SweepResult& sweep) {
  std::ostringstream out;
  out << "alpha,lambda,mrrp,mrev,mrvss\n";
  for (const SweepCell& cell : sweep.cells)
    out << fmt(cell.params.alpha) << ',' << fmt(cell.params.lambda) << ','
        << fmt(cell.report.mrrp) << ',' << fmt(cell.report.mrev) << ','
        << fmt(cell.report.mrvss) << "\n";
  return out.str();
}

CheckResult run_check(double grid_step, std::size_t budget, std::uint64_t seed,
                      const Instance* extra, const SolverConfig& config) {
  if (!(grid_step > 0.0))
    throw ValidationError({"grid step must be positive"});
  CheckResult result;

  // Solver against exhaustive grid search. Runs first so a budget refusal
  // surfaces before the distribution probe starts.
  const RiskParams micro_params{0.8, 0.5};
  auto check_instance = [&](std::size_t index, const Instance& inst) {
    CheckResult::MicroRow row;
    row.index = index;
    const Solution sol = solve(inst, micro_params, config);
    const oracle::GridSolution grid =
        oracle::grid_solve(inst, micro_params, grid_step, budget);
    row.solver_objective = sol.evaluation.objective;
    row.grid_objective = grid.objective;
    row.deviation = row.solver_objective - row.grid_objective;
    row.allowed = grid.gap;
    row.passed =
        row.deviation >= -0.01 - 1e-9 && row.deviation <= grid.gap + 0.01;
    result.micros.push_back(row);
  };
  const std::vector<Instance> micros = oracle::micro_instances();
  for (std::size_t i = 0; i < micros.size(); ++i)
    check_instance(i, micros[i]);
  if (extra) check_instance(micros.size(), *extra);

  // Closed-form CVaR against its grid minimization.
  {
    static constexpr double kAlphas[] = {0.0, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99};
    std::mt19937_64 rng(seed);
    auto& probe = result.cvar;
    probe.distributions = 1000;
    probe.passed = true;
    double max_dev = 0.0, max_allowed = 0.0;
    for (std::size_t i = 0; i < probe.distributions; ++i) {
      const LossDistribution dist = oracle::random_distribution(rng);
      const double alpha = kAlphas[i % (sizeof kAlphas / sizeof *kAlphas)];
      const double closed = cvar(dist, alpha).cvar;
      const double grid = oracle::cvar_grid_min(dist, alpha, grid_step);
      const double dev = grid - closed;
      const double allowed = grid_step / (1.0 - alpha);
      max_dev = std::max(max_dev, dev);
      max_allowed = std::max(max_allowed, allowed);
      if (dev < -1e-9 || dev > allowed + 1e-9) probe.passed = false;
    }
    probe.max_deviation = max_dev;
    probe.max_allowed = max_allowed;
  }

  result.passed = result.cvar.passed;
  for (const auto& row : result.micros) result.passed &= row.passed;
  return result;
}

std::string check_report(const CheckResult& result) {
  std::ostringstream out;
  out << "cvar probe: " << result.cvar.distributions
      << " distributions, max deviation " << fmt(result.cvar.max_deviation)
      << " (bound " << fmt(result.cvar.max_allowed) << "): "
      << (result.cvar.passed ? "ok" : "FAIL") << "\n";
  for (const auto& row : result.micros)
    out << "micro " << row.index << ": solver " << fmt(row.solver_objective)
        << " grid " << fmt(row.grid_objective) << " deviation "
        << fmt(row.deviation) << " (gap bound " << fmt(row.allowed)
        << "): " << (row.passed ? "ok" : "FAIL") << "\n";
  out << "overall: " << (result.passed ? "ok" : "FAIL") << "\n";
  return out.str();
}

}  // namespace revlog
