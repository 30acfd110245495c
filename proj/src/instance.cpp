#include "revlog/instance.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace revlog {

using json = nlohmann::json;

namespace {

bool present(double v) { return !std::isnan(v); }

bool same_cell(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  return a == b;
}

bool same_matrix(const std::vector<std::vector<double>>& a,
                 const std::vector<std::vector<double>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].size() != b[r].size()) return false;
    for (std::size_t c = 0; c < a[r].size(); ++c)
      if (!same_cell(a[r][c], b[r][c])) return false;
  }
  return true;
}

}  // namespace

bool Instance::travel_arc(std::size_t node, std::size_t center) const {
  return present(travel_cost[node][center]);
}

bool Instance::ship_arc(std::size_t center, std::size_t recovery) const {
  return present(ship_cost[center][recovery]);
}

bool Instance::reachable(std::size_t node) const {
  for (std::size_t i = 0; i < n_centers(); ++i)
    if (travel_arc(node, i)) return true;
  return false;
}

std::vector<std::size_t> Instance::unreachable_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n_nodes(); ++k)
    if (!reachable(k)) out.push_back(k);
  return out;
}

bool Instance::fully_realized() const {
  for (const auto& s : scenarios)
    if (!s.realized(n_nodes())) return false;
  return true;
}

bool Instance::operator==(const Instance& other) const {
  if (nodes != other.nodes || centers != other.centers ||
      recovery_centers != other.recovery_centers)
    return false;
  if (!same_matrix(travel_cost, other.travel_cost) ||
      !same_matrix(ship_cost, other.ship_cost))
    return false;
  if (fixed_cost != other.fixed_cost || utility != other.utility ||
      capacity != other.capacity)
    return false;
  if (reman_value != other.reman_value || scrap_value != other.scrap_value ||
      reman_fixed_cost != other.reman_fixed_cost)
    return false;
  if (quality.size() != other.quality.size()) return false;
  for (std::size_t q = 0; q < quality.size(); ++q)
    if (quality[q].beta != other.quality[q].beta || quality[q].h != other.quality[q].h)
      return false;
  if (scenarios.size() != other.scenarios.size()) return false;
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    const auto& a = scenarios[s];
    const auto& b = other.scenarios[s];
    if (a.prob != b.prob || a.range != b.range || a.quantities != b.quantities)
      return false;
  }
  return true;
}

ValidationError::ValidationError(std::vector<std::string> issues)
    : std::runtime_error([&issues] {
        std::string msg = "instance validation failed:";
        for (const auto& s : issues) msg += "\n  - " + s;
        return msg;
      }()),
      issues_(std::move(issues)) {}

void validate(const Instance& inst) {
  std::vector<std::string> issues;
  auto bad = [&issues](std::string msg) { issues.push_back(std::move(msg)); };

  const std::size_t K = inst.n_nodes();
  const std::size_t I = inst.n_centers();
  const std::size_t J = inst.n_recovery();

  if (K == 0) bad("nodes: empty");
  if (I == 0) bad("centers: empty");
  if (J == 0) bad("recovery_centers: empty");

  if (inst.travel_cost.size() != K)
    bad("travel_cost: expected " + std::to_string(K) + " rows");
  for (std::size_t k = 0; k < inst.travel_cost.size(); ++k) {
    if (inst.travel_cost[k].size() != I) {
      bad("travel_cost row " + std::to_string(k) + ": expected " + std::to_string(I) +
          " entries");
      continue;
    }
    for (std::size_t i = 0; i < I; ++i) {
      double v = inst.travel_cost[k][i];
      if (present(v) && !(v >= 0.0))
        bad("travel_cost[" + std::to_string(k) + "][" + std::to_string(i) +
            "]: negative");
    }
  }
  if (inst.ship_cost.size() != I)
    bad("ship_cost: expected " + std::to_string(I) + " rows");
  for (std::size_t i = 0; i < inst.ship_cost.size(); ++i) {
    if (inst.ship_cost[i].size() != J) {
      bad("ship_cost row " + std::to_string(i) + ": expected " + std::to_string(J) +
          " entries");
      continue;
    }
    for (std::size_t j = 0; j < J; ++j) {
      double v = inst.ship_cost[i][j];
      if (present(v) && !(v >= 0.0))
        bad("ship_cost[" + std::to_string(i) + "][" + std::to_string(j) + "]: negative");
    }
  }

  if (inst.fixed_cost.size() != I)
    bad("fixed_cost: expected " + std::to_string(I) + " entries");
  for (std::size_t i = 0; i < inst.fixed_cost.size(); ++i)
    if (!(inst.fixed_cost[i] >= 0.0))
      bad("fixed_cost[" + std::to_string(i) + "]: negative or NaN");

  if (inst.utility.size() != K) bad("utility: expected " + std::to_string(K) + " entries");
  for (std::size_t k = 0; k < inst.utility.size(); ++k)
    if (!(inst.utility[k] > 0.0))
      bad("utility[" + std::to_string(k) + "]: must be positive");

  if (inst.capacity.size() != J)
    bad("capacity: expected " + std::to_string(J) + " entries");
  for (std::size_t j = 0; j < inst.capacity.size(); ++j)
    if (!(inst.capacity[j] > 0.0))
      bad("capacity[" + std::to_string(j) + "]: must be positive");

  if (!(inst.reman_value > 0.0)) bad("values.P: must be positive");
  if (!(inst.scrap_value > 0.0)) bad("values.C: must be positive");
  if (!(inst.reman_fixed_cost > 0.0)) bad("values.C_rem: must be positive");

  if (inst.quality.empty()) bad("quality: empty ladder");
  for (std::size_t q = 0; q < inst.quality.size(); ++q) {
    const auto& lvl = inst.quality[q];
    if (!(lvl.beta >= 0.0 && lvl.beta <= 1.0))
      bad("quality[" + std::to_string(q) + "].beta: outside [0,1]");
    if (!(lvl.h >= 0.0)) bad("quality[" + std::to_string(q) + "].h: negative");
    if (q > 0) {
      if (inst.quality[q].beta < inst.quality[q - 1].beta)
        bad("quality: beta not non-decreasing at level " + std::to_string(q));
      if (inst.quality[q].h < inst.quality[q - 1].h)
        bad("quality: h not non-decreasing at level " + std::to_string(q));
    }
  }

  if (inst.scenarios.empty()) bad("scenarios: empty");
  double prob_sum = 0.0;
  for (std::size_t s = 0; s < inst.scenarios.size(); ++s) {
    const auto& sc = inst.scenarios[s];
    if (!(sc.prob > 0.0 && sc.prob <= 1.0))
      bad("scenarios[" + std::to_string(s) + "].prob: outside (0,1]");
    else
      prob_sum += sc.prob;
    if (sc.range) {
      auto [lo, hi] = *sc.range;
      if (!(lo <= hi))
        bad("scenarios[" + std::to_string(s) + "].uniform: lo > hi");
      if (!(lo >= 0.0))
        bad("scenarios[" + std::to_string(s) + "].uniform: negative lower bound");
    } else if (sc.quantities.size() != K) {
      bad("scenarios[" + std::to_string(s) + "]: expected " + std::to_string(K) +
          " quantities");
    }
    for (std::size_t k = 0; k < sc.quantities.size(); ++k)
      if (!(sc.quantities[k] >= 0.0))
        bad("scenarios[" + std::to_string(s) + "].quantities[" + std::to_string(k) +
            "]: negative");
  }
  if (!inst.scenarios.empty() && std::abs(prob_sum - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "scenarios: probabilities sum to " << prob_sum;
    bad(os.str());
  }

  if (!issues.empty()) throw ValidationError(std::move(issues));
}

namespace {

double read_cost_cell(const json& cell, const char* what, std::size_t r, std::size_t c) {
  if (cell.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!cell.is_number())
    throw ParseError(std::string(what) + "[" + std::to_string(r) + "][" +
                     std::to_string(c) + "]: expected number or null");
  return cell.get<double>();
}

std::vector<std::vector<double>> read_matrix(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing field: ") + key);
  const json& m = doc.at(key);
  if (!m.is_array()) throw ParseError(std::string(key) + ": expected array of rows");
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (!m[r].is_array())
      throw ParseError(std::string(key) + " row " + std::to_string(r) +
                       ": expected array");
    std::vector<double> row;
    for (std::size_t c = 0; c < m[r].size(); ++c)
      row.push_back(read_cost_cell(m[r][c], key, r, c));
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<double> read_numbers(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing field: ") + key);
  const json& a = doc.at(key);
  if (!a.is_array()) throw ParseError(std::string(key) + ": expected array");
  std::vector<double> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number())
      throw ParseError(std::string(key) + "[" + std::to_string(i) +
                       "]: expected number");
    out.push_back(a[i].get<double>());
  }
  return out;
}

std::vector<std::string> read_names(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing field: ") + key);
  const json& a = doc.at(key);
  if (!a.is_array()) throw ParseError(std::string(key) + ": expected array");
  std::vector<std::string> out;
  for (const auto& v : a) {
    if (v.is_string())
      out.push_back(v.get<std::string>());
    else if (v.is_number_integer())
      out.push_back(std::to_string(v.get<long long>()));
    else
      throw ParseError(std::string(key) + ": entries must be strings or integers");
  }
  return out;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("top level: expected object");

  Instance inst;
  inst.nodes = read_names(doc, "nodes");
  inst.centers = read_names(doc, "centers");
  inst.recovery_centers = read_names(doc, "recovery_centers");
  inst.travel_cost = read_matrix(doc, "travel_cost");
  inst.ship_cost = read_matrix(doc, "ship_cost");
  inst.fixed_cost = read_numbers(doc, "fixed_cost");
  inst.utility = read_numbers(doc, "utility");
  inst.capacity = read_numbers(doc, "capacity");

  if (!doc.contains("values") || !doc.at("values").is_object())
    throw ParseError("missing field: values");
  const json& vals = doc.at("values");
  for (const char* key : {"P", "C", "C_rem"})
    if (!vals.contains(key) || !vals.at(key).is_number())
      throw ParseError(std::string("values.") + key + ": expected number");
  inst.reman_value = vals.at("P").get<double>();
  inst.scrap_value = vals.at("C").get<double>();
  inst.reman_fixed_cost = vals.at("C_rem").get<double>();

  if (!doc.contains("quality") || !doc.at("quality").is_array())
    throw ParseError("missing field: quality");
  for (std::size_t q = 0; q < doc.at("quality").size(); ++q) {
    const json& lvl = doc.at("quality")[q];
    if (!lvl.is_object() || !lvl.contains("beta") || !lvl.contains("h") ||
        !lvl.at("beta").is_number() || !lvl.at("h").is_number())
      throw ParseError("quality[" + std::to_string(q) + "]: expected {beta, h}");
    inst.quality.push_back({lvl.at("beta").get<double>(), lvl.at("h").get<double>()});
  }

  if (!doc.contains("scenarios") || !doc.at("scenarios").is_array())
    throw ParseError("missing field: scenarios");
  for (std::size_t s = 0; s < doc.at("scenarios").size(); ++s) {
    const json& sc = doc.at("scenarios")[s];
    if (!sc.is_object() || !sc.contains("prob") || !sc.at("prob").is_number())
      throw ParseError("scenarios[" + std::to_string(s) + "]: expected {prob, ...}");
    Scenario out;
    out.prob = sc.at("prob").get<double>();
    const bool has_range = sc.contains("uniform");
    const bool has_qty = sc.contains("quantities");
    if (has_range == has_qty)
      throw ParseError("scenarios[" + std::to_string(s) +
                       "]: exactly one of uniform/quantities required");
    if (has_range) {
      const json& r = sc.at("uniform");
      if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
        throw ParseError("scenarios[" + std::to_string(s) +
                         "].uniform: expected [lo, hi]");
      out.range = {r[0].get<double>(), r[1].get<double>()};
    } else {
      const json& q = sc.at("quantities");
      if (!q.is_array())
        throw ParseError("scenarios[" + std::to_string(s) +
                         "].quantities: expected array");
      for (const auto& v : q) {
        if (!v.is_number())
          throw ParseError("scenarios[" + std::to_string(s) +
                           "].quantities: expected numbers");
        out.quantities.push_back(v.get<double>());
      }
    }
    inst.scenarios.push_back(std::move(out));
  }

  validate(inst);
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const Instance& inst) {
  json doc;
  doc["nodes"] = inst.nodes;
  doc["centers"] = inst.centers;
  doc["recovery_centers"] = inst.recovery_centers;

  auto matrix_json = [](const std::vector<std::vector<double>>& m) {
    json rows = json::array();
    for (const auto& row : m) {
      json r = json::array();
      for (double v : row) {
        if (std::isnan(v))
          r.push_back(nullptr);
        else
          r.push_back(v);
      }
      rows.push_back(std::move(r));
    }
    return rows;
  };
  doc["travel_cost"] = matrix_json(inst.travel_cost);
  doc["ship_cost"] = matrix_json(inst.ship_cost);
  doc["fixed_cost"] = inst.fixed_cost;
  doc["utility"] = inst.utility;
  doc["capacity"] = inst.capacity;
  doc["values"] = {{"P", inst.reman_value},
                   {"C", inst.scrap_value},
                   {"C_rem", inst.reman_fixed_cost}};
  json quality = json::array();
  for (const auto& lvl : inst.quality)
    quality.push_back({{"beta", lvl.beta}, {"h", lvl.h}});
  doc["quality"] = std::move(quality);
  json scens = json::array();
  for (const auto& sc : inst.scenarios) {
    json s;
    s["prob"] = sc.prob;
    if (sc.range)
      s["uniform"] = {sc.range->first, sc.range->second};
    else
      s["quantities"] = sc.quantities;
    scens.push_back(std::move(s));
  }
  doc["scenarios"] = std::move(scens);
  return doc.dump(2) + "\n";
}

std::vector<Scenario> realize_scenarios(const std::vector<Scenario>& specs,
                                        std::size_t n_nodes, ScenarioMode mode,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Fixed mapping to [0,1); kept explicit so output is identical across
  // standard library implementations.
  auto unit = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };

  std::vector<Scenario> out;
  out.reserve(specs.size());
  for (const auto& spec : specs) {
    Scenario sc;
    sc.prob = spec.prob;
    if (!spec.range) {
      sc.quantities = spec.quantities;
    } else {
      auto [lo, hi] = *spec.range;
      sc.quantities.resize(n_nodes);
      for (std::size_t k = 0; k < n_nodes; ++k) {
        if (mode == ScenarioMode::midpoint)
          sc.quantities[k] = (lo + hi) / 2.0;
        else
          sc.quantities[k] = lo + (hi - lo) * unit();
      }
    }
    out.push_back(std::move(sc));
  }
  return out;
}

Instance realize(const Instance& instance, ScenarioMode mode, std::uint64_t seed) {
  Instance out = instance;
  out.scenarios = realize_scenarios(instance.scenarios, instance.n_nodes(), mode, seed);
  return out;
}

}  // namespace revlog
