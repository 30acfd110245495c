#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "revlog/oracle.hpp"
#include "revlog/reports.hpp"

using namespace revlog;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

}  // namespace

TEST_CASE("solution documents render deterministically") {
  const Instance inst = oracle::micro_instances()[1];
  const RiskParams params{0.8, 0.5};
  const Solution sol = solve(inst, params);

  const std::string doc = solution_document(inst, params, sol);
  CHECK(doc == solution_document(inst, params, sol));
  CHECK(doc.find("\"objective\"") != std::string::npos);
  CHECK(doc.find("\"open_centers\"") != std::string::npos);
  CHECK(doc.find("\"shipments\"") != std::string::npos);
  CHECK(doc.find("\"transport_cost\"") != std::string::npos);
  CHECK(doc.back() == '\n');
}

TEST_CASE("stochastic documents carry the three metrics") {
  const Instance inst = oracle::micro_instances()[1];
  const RiskParams params{0.8, 0.5};
  const StochasticReport rep = compute_mrvss(inst, params);
  const std::string doc = stochastic_document(inst, params, rep);
  for (const char* key : {"\"mrrp\"", "\"mrev\"", "\"mrvss\"", "\"ev_repaired\"",
                          "\"stochastic\"", "\"expected_value\""})
    CHECK(doc.find(key) != std::string::npos);
}

TEST_CASE("sweep produces sorted, deduplicated cells") {
  const Instance inst = oracle::micro_instances()[1];
  const SweepResult sweep =
      run_sweep(inst, {0.9, 0.6, 0.9}, {0.5, 0.0, 0.5, 0.0});
  REQUIRE(sweep.cells.size() == 4);  // 2 alphas x 2 lambdas after dedup
  CHECK(sweep.cells[0].params.alpha == 0.6);
  CHECK(sweep.cells[0].params.lambda == 0.0);
  CHECK(sweep.cells[1].params.lambda == 0.5);
  CHECK(sweep.cells[2].params.alpha == 0.9);

  // A single pair reproduces the plain solve.
  const SweepResult one = run_sweep(inst, {0.8}, {0.5});
  REQUIRE(one.cells.size() == 1);
  const Solution direct = solve(inst, RiskParams{0.8, 0.5});
  CHECK(one.cells[0].report.solution.evaluation.objective ==
        direct.evaluation.objective);

  CHECK_THROWS_AS(run_sweep(inst, {}, {0.5}), ValidationError);
  CHECK_THROWS_AS(run_sweep(inst, {1.2}, {0.5}), ValidationError);
}

TEST_CASE("sweep CSV tables have the documented shape") {
  const Instance inst = oracle::micro_instances()[1];
  const SweepResult sweep = run_sweep(inst, {0.6, 0.9}, {0.0, 0.5});

  const std::string table = sweep_table_csv(inst, sweep);
  const auto table_lines = lines_of(table);
  REQUIRE(table_lines.size() == 5);
  CHECK(table_lines[0] ==
        "alpha,lambda,open_centers,cutoff,objective,cvar,var_threshold,"
        "vr_n1,vs_n1");
  for (std::size_t r = 1; r < table_lines.size(); ++r) {
    const auto fields = split_csv(table_lines[r]);
    CHECK(fields.size() == 9);
  }
  // Rows sorted by alpha then lambda.
  CHECK(split_csv(table_lines[1])[0] == "0.6");
  CHECK(split_csv(table_lines[2])[0] == "0.6");
  CHECK(split_csv(table_lines[3])[0] == "0.9");
  CHECK(split_csv(table_lines[1])[1] == "0");
  CHECK(split_csv(table_lines[2])[1] == "0.5");

  const auto long_lines = lines_of(objective_long_csv(sweep));
  REQUIRE(long_lines.size() == 5);
  CHECK(long_lines[0] == "alpha,lambda,objective");

  const auto metric_lines = lines_of(stochastic_metrics_csv(sweep));
  REQUIRE(metric_lines.size() == 5);
  CHECK(metric_lines[0] == "alpha,lambda,mrrp,mrev,mrvss");
  for (std::size_t r = 1; r < metric_lines.size(); ++r) {
    const auto fields = split_csv(metric_lines[r]);
    REQUIRE(fields.size() == 5);
    CHECK(std::stod(fields[4]) >= -1e-6);  // mrvss
  }

  // Byte-determinism of the rendering itself.
  CHECK(table == sweep_table_csv(inst, sweep));
}

TEST_CASE("lambda zero rows ignore alpha") {
  const Instance inst = oracle::micro_instances()[3];  // two scenarios
  const SweepResult sweep = run_sweep(inst, {0.7, 0.95}, {0.0});
  REQUIRE(sweep.cells.size() == 2);
  CHECK(sweep.cells[0].report.solution.evaluation.objective ==
        doctest::Approx(sweep.cells[1].report.solution.evaluation.objective)
            .epsilon(1e-9));
}

TEST_CASE("oracle cross-check passes at a coarse step") {
  const CheckResult result = run_check(0.05, 100'000'000, 42);
  CHECK(result.cvar.passed);
  CHECK(result.cvar.distributions == 1000);
  REQUIRE(result.micros.size() == 20);
  for (const auto& row : result.micros) {
    CAPTURE(row.index);
    CHECK(row.passed);
  }
  CHECK(result.passed);

  const std::string report = check_report(result);
  CHECK(report.find("overall: ok") != std::string::npos);
  CHECK(lines_of(report).size() == 22);  // probe + 20 micros + verdict
}

TEST_CASE("check accepts an extra instance and respects its budget") {
  const Instance inst = oracle::micro_instances()[0];
  const CheckResult result = run_check(0.05, 100'000'000, 42, &inst);
  CHECK(result.micros.size() == 21);
  CHECK(result.passed);

  CHECK_THROWS_AS(run_check(0.001, 100, 42), oracle::BudgetExceededError);
}
