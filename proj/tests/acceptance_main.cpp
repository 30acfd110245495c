// Acceptance harness. Each criterion prints exactly one line:
//   criterion N: PASS — detail (elapsed)
//   criterion N: FAIL — detail (elapsed)
// Run a single criterion with --criterion N, or all of them with no flags.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "revlog/choice.hpp"
#include "revlog/oracle.hpp"
#include "revlog/reports.hpp"

using namespace revlog;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kProbeSeed = 20260823;
const double kAlphaSet[] = {0.0, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99};

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string data_path(const char* name) {
  return std::string(REVLOG_DATA_DIR) + "/" + name;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

double dist_mean(const LossDistribution& d) {
  double m = 0.0;
  for (std::size_t i = 0; i < d.losses.size(); ++i) m += d.probs[i] * d.losses[i];
  return m;
}

// ---- criterion 1: CVaR axioms ---------------------------------------------

Outcome criterion1() {
  Outcome out;
  std::mt19937_64 rng(kProbeSeed);
  double worst = 0.0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const LossDistribution dist = oracle::random_distribution(rng);
    const double mean = dist_mean(dist);
    double prev = -1e300;
    for (double a : kAlphaSet) {
      const double c = cvar(dist, a).cvar;
      worst = std::max(worst, mean - c);
      worst = std::max(worst, prev - c);
      if (c < mean - 1e-9) out.fail("cvar below mean at alpha " + fmt(a));
      if (c < prev - 1e-9) out.fail("cvar not monotone at alpha " + fmt(a));
      prev = c;
    }
    const double alpha = kAlphaSet[i % 7];
    const double base = cvar(dist, alpha).cvar;

    LossDistribution scaled = dist;
    for (double& l : scaled.losses) l *= 2.5;
    const double hom = std::fabs(cvar(scaled, alpha).cvar - 2.5 * base);
    worst = std::max(worst, hom);
    if (hom > 1e-9) out.fail("homogeneity off by " + fmt(hom));

    LossDistribution shifted = dist;
    for (double& l : shifted.losses) l += 17.25;
    const double tra = std::fabs(cvar(shifted, alpha).cvar - (base + 17.25));
    worst = std::max(worst, tra);
    if (tra > 1e-9) out.fail("translation off by " + fmt(tra));
  }
  if (out.pass)
    out.detail = "1000 distributions, worst slack " + fmt(worst);
  return out;
}

// ---- criterion 2: epigraph identity ---------------------------------------

Outcome criterion2() {
  Outcome out;
  std::mt19937_64 rng(kProbeSeed);
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const LossDistribution dist = oracle::random_distribution(rng);
    const double alpha = kAlphaSet[i % 7];
    const double closed = cvar(dist, alpha).cvar;
    const double grid = oracle::cvar_grid_min(dist, alpha, 0.01);
    const double bound = 0.01 / (1.0 - alpha);
    const double dev = grid - closed;
    worst_ratio = std::max(worst_ratio, std::fabs(dev) / bound);
    if (dev < -1e-9)
      out.fail("grid minimum below closed form by " + fmt(-dev));
    if (dev > bound + 1e-9)
      out.fail("deviation " + fmt(dev) + " exceeds bound " + fmt(bound));
  }
  if (out.pass)
    out.detail = "1000 distributions, worst deviation at " +
                 fmt(100.0 * worst_ratio) + "% of bound";
  return out;
}

// ---- criterion 3: solver equals the grid oracle ---------------------------

Outcome criterion3() {
  Outcome out;
  const RiskParams params{0.8, 0.5};
  const std::vector<Instance> micros = oracle::micro_instances();
  double worst = 0.0;
  for (std::size_t i = 0; i < micros.size(); ++i) {
    const Solution sol = solve(micros[i], params);
    const oracle::GridSolution grid =
        oracle::grid_solve(micros[i], params, 0.001);
    const double diff =
        std::fabs(sol.evaluation.objective - grid.objective);
    worst = std::max(worst, diff);
    if (diff > 0.01)
      out.fail("micro " + std::to_string(i) + " off by " + fmt(diff));
  }
  if (out.pass)
    out.detail = std::to_string(micros.size()) +
                 " micro-instances, worst gap " + fmt(worst);
  return out;
}

// ---- criterion 4: risk trends on the reference instance --------------------

Outcome criterion4() {
  Outcome out;
  const Instance inst =
      realize(load_instance(data_path("table2.json")), ScenarioMode::midpoint, 42);
  const std::vector<double> alphas = {0.9, 0.95, 0.99};
  const std::vector<double> lambdas = {0.0, 0.3, 0.6, 1.0, 3.0, 10.0};

  std::vector<std::vector<Solution>> sol(alphas.size());
  for (std::size_t a = 0; a < alphas.size(); ++a)
    for (double l : lambdas)
      sol[a].push_back(solve(inst, RiskParams{alphas[a], l}));

  // (a) objective non-increasing in lambda at fixed alpha ...
  for (std::size_t a = 0; a < alphas.size(); ++a)
    for (std::size_t l = 0; l + 1 < lambdas.size(); ++l) {
      const double here = sol[a][l].evaluation.objective;
      const double next = sol[a][l + 1].evaluation.objective;
      if (next > here + 1e-6)
        out.fail("objective rises from lambda " + fmt(lambdas[l]) + " to " +
                 fmt(lambdas[l + 1]) + " at alpha " + fmt(alphas[a]));
    }
  // ... and non-increasing in alpha at fixed lambda > 0.
  for (std::size_t l = 1; l < lambdas.size(); ++l)
    for (std::size_t a = 0; a + 1 < alphas.size(); ++a) {
      const double here = sol[a][l].evaluation.objective;
      const double next = sol[a + 1][l].evaluation.objective;
      if (next > here + 1e-6)
        out.fail("objective rises from alpha " + fmt(alphas[a]) + " to " +
                 fmt(alphas[a + 1]) + " at lambda " + fmt(lambdas[l]));
    }

  // (b) the lambda = 0 row ignores alpha.
  for (std::size_t a = 1; a < alphas.size(); ++a) {
    const double delta = std::fabs(sol[a][0].evaluation.objective -
                                   sol[0][0].evaluation.objective);
    if (delta > 1e-9)
      out.fail("lambda 0 row varies with alpha by " + fmt(delta));
  }

  // (c) heavy risk aversion leaves the market.
  const Solution& extreme = sol[2][5];  // alpha 0.99, lambda 10
  const bool no_center =
      std::none_of(extreme.design.open.begin(), extreme.design.open.end(),
                   [](std::uint8_t y) { return y != 0; });
  const bool scrap_only = inst.quality[extreme.design.cutoff].beta == 0.0;
  if (!no_center && !scrap_only)
    out.fail("alpha 0.99, lambda 10 still opens a remanufacturing design");

  if (out.pass)
    out.detail = "18 cells, objective spans " +
                 fmt(sol[2][5].evaluation.objective) + " .. " +
                 fmt(sol[0][0].evaluation.objective);
  return out;
}

// ---- criterion 5: value of the stochastic solution -------------------------

Outcome criterion5() {
  Outcome out;
  const RiskParams params{0.8, 0.5};
  const std::vector<Instance> micros = oracle::micro_instances();
  for (std::size_t i = 0; i < micros.size(); ++i) {
    const StochasticReport rep = compute_mrvss(micros[i], params);
    if (rep.mrvss < -1e-6)
      out.fail("micro " + std::to_string(i) + " has mrvss " + fmt(rep.mrvss));
    if (micros[i].n_scenarios() == 1 && rep.mrvss != 0.0)
      out.fail("micro " + std::to_string(i) +
               " single-scenario mrvss not exactly zero");
  }

  const Instance inst =
      realize(load_instance(data_path("table2.json")), ScenarioMode::midpoint, 42);
  const StochasticReport mild = compute_mrvss(inst, RiskParams{0.9, 0.3});
  const StochasticReport harsh = compute_mrvss(inst, RiskParams{0.9, 3.0});
  if (mild.mrvss < -1e-6 || harsh.mrvss < -1e-6)
    out.fail("reference instance mrvss negative");
  if (harsh.mrvss < mild.mrvss - 1e-9)
    out.fail("mrvss at lambda 3 (" + fmt(harsh.mrvss) +
             ") below lambda 0.3 (" + fmt(mild.mrvss) + ")");
  if (out.pass)
    out.detail = "reference mrvss " + fmt(mild.mrvss) + " at lambda 0.3, " +
                 fmt(harsh.mrvss) + " at lambda 3";
  return out;
}

// ---- criterion 6: flow correctness -----------------------------------------

void check_flows(const Instance& inst, const Solution& sol, bool enumerate,
                 const std::string& label, Outcome& out) {
  const std::size_t m = inst.n_centers();
  for (std::size_t t = 0; t < inst.n_scenarios(); ++t) {
    const DemandTable demand = demand_table(inst, sol.design, sol.prices, t);
    const std::vector<double> collected = demand.collected();
    const FlowPlan& plan = sol.flows[t];

    const std::vector<double> shipped = plan.shipped_per_center(m);
    for (std::size_t i = 0; i < m; ++i)
      if (std::fabs(shipped[i] - collected[i]) > 1e-9)
        out.fail(label + ": balance off by " +
                 fmt(std::fabs(shipped[i] - collected[i])));

    const std::vector<double> arriving =
        plan.arriving_per_recovery(inst.n_recovery());
    for (std::size_t j = 0; j < inst.n_recovery(); ++j)
      if (arriving[j] > inst.capacity[j] + 1e-9)
        out.fail(label + ": capacity exceeded at recovery " + std::to_string(j));

    for (const Shipment& s : plan.shipments) {
      if (!inst.ship_arc(s.center, s.recovery))
        out.fail(label + ": shipment on a missing arc");
      if (s.quantity < 0.0) out.fail(label + ": negative shipment");
    }

    if (!enumerate) continue;
    // Exhaustive enumeration on the integerized problem (scale 10).
    std::vector<long> supplies(m), caps(inst.n_recovery());
    for (std::size_t i = 0; i < m; ++i) supplies[i] = std::lround(10.0 * collected[i]);
    for (std::size_t j = 0; j < caps.size(); ++j)
      caps[j] = std::lround(10.0 * inst.capacity[j]);
    const auto best =
        oracle::route_cost_enumerated(supplies, inst.ship_cost, caps);
    if (!best) {
      out.fail(label + ": enumerator found no feasible routing");
      continue;
    }
    const std::vector<double> scaled(supplies.begin(), supplies.end());
    const std::vector<double> scaled_caps(caps.begin(), caps.end());
    const FlowPlan integer_plan =
        route_flows(scaled, inst.ship_cost, scaled_caps);
    if (std::fabs(integer_plan.cost - *best) > 1e-6)
      out.fail(label + ": routing cost " + fmt(integer_plan.cost) +
               " vs enumerated " + fmt(*best));
  }
}

Outcome criterion6() {
  Outcome out;
  const RiskParams params{0.8, 0.5};
  const std::vector<Instance> micros = oracle::micro_instances();
  for (std::size_t i = 0; i < micros.size(); ++i) {
    const Solution sol = solve(micros[i], params);
    check_flows(micros[i], sol, true, "micro " + std::to_string(i), out);
  }

  const Instance inst =
      realize(load_instance(data_path("table2.json")), ScenarioMode::midpoint, 42);
  for (double a : {0.9, 0.95, 0.99})
    for (double l : {0.0, 0.3, 0.6, 1.0, 3.0, 10.0}) {
      const Solution sol = solve(inst, RiskParams{a, l});
      check_flows(inst, sol, false,
                  "reference a=" + fmt(a) + " l=" + fmt(l), out);
    }
  if (out.pass)
    out.detail = "balance, capacity and enumeration checks clean on 38 solves";
  return out;
}

// ---- criterion 7: determinism ----------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(REVLOG_CLI_PATH) + " " + args +
                          " >/dev/null 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

Outcome criterion7() {
  Outcome out;
  const fs::path dir =
      fs::temp_directory_path() / ("revlog_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  const std::string micro = data_path("micro.json");
  const std::string table2 = data_path("table2.json");

  // solve, sampled scenarios.
  const std::string solve_args = "solve --instance " + micro +
                                 " --alpha 0.9 --lambda 0.5 "
                                 "--scenario-mode sample --seed 7 --out ";
  if (run_cli(solve_args + (dir / "a.json").string()) != 0 ||
      run_cli(solve_args + (dir / "b.json").string()) != 0)
    out.fail("solve failed");
  else if (slurp(dir / "a.json") != slurp(dir / "b.json"))
    out.fail("sampled solve output differs between runs");

  // solve, reference instance at midpoint.
  const std::string ref_args = "solve --instance " + table2 +
                               " --alpha 0.9 --lambda 0.3 --out ";
  if (run_cli(ref_args + (dir / "r1.json").string()) != 0 ||
      run_cli(ref_args + (dir / "r2.json").string()) != 0)
    out.fail("reference solve failed");
  else if (slurp(dir / "r1.json") != slurp(dir / "r2.json"))
    out.fail("reference solve output differs between runs");

  // sweep with metrics.
  const std::string sweep_args = "sweep --instance " + micro +
                                 " --alphas 0.8,0.9 --lambdas 0,0.5 "
                                 "--scenario-mode sample --seed 9 --out-dir ";
  if (run_cli(sweep_args + (dir / "s1").string()) != 0 ||
      run_cli(sweep_args + (dir / "s2").string()) != 0)
    out.fail("sweep failed");
  else
    for (const char* name :
         {"sweep_table.csv", "objective_long.csv", "stochastic_metrics.csv"})
      if (slurp(dir / "s1" / name) != slurp(dir / "s2" / name))
        out.fail(std::string(name) + " differs between runs");

  fs::remove_all(dir);
  if (out.pass) out.detail = "solve and sweep outputs byte-identical";
  return out;
}

// ---- driver ----------------------------------------------------------------

struct Criterion {
  int number;
  Outcome (*fn)();
  double time_limit;  // seconds; 0 = unlimited
};

const Criterion kCriteria[] = {
    {1, criterion1, 5.0},  {2, criterion2, 30.0}, {3, criterion3, 300.0},
    {4, criterion4, 600.0}, {5, criterion5, 0.0},  {6, criterion6, 0.0},
    {7, criterion7, 0.0},
};

bool run_one(const Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = c.fn();
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (c.time_limit > 0.0 && elapsed > c.time_limit)
    out.fail("took " + fmt(elapsed) + " s, limit " + fmt(c.time_limit) + " s");

  std::cout << "criterion " << c.number << ": " << (out.pass ? "PASS" : "FAIL")
            << " — " << out.detail << " (" << fmt(elapsed) << " s)\n";
  return out.pass;
}

}  // namespace

int main(int argc, char** argv) {
  int selected = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  if (selected < 0 || selected > 7) {
    std::cerr << "criterion must be between 1 and 7\n";
    return 2;
  }

  bool all_pass = true;
  for (const Criterion& c : kCriteria)
    if (selected == 0 || c.number == selected) all_pass &= run_one(c);
  return all_pass ? 0 : 1;
}
