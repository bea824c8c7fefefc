#include "gridscreen/severity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace gridscreen {

namespace {

struct WeightField {
  const char* name;
  double SeverityWeights::*member;
};

constexpr WeightField kWeightFields[] = {
    {"k_bus", &SeverityWeights::k_bus},
    {"k_line", &SeverityWeights::k_line},
    {"k_gen_shed", &SeverityWeights::k_gen_shed},
    {"k_load_shed", &SeverityWeights::k_load_shed},
    {"k_div", &SeverityWeights::k_div},
    {"k_island", &SeverityWeights::k_island},
};

bool solved(const DcSolution& s, VertexId v) {
  return s.island_id.empty() || s.island_id[v] == 0;
}

}  // namespace

void check_weights(const SeverityWeights& w) {
  for (const auto& f : kWeightFields) {
    const double v = w.*f.member;
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(fmt::format("weight {} must be a finite value >= 0", f.name));
    }
  }
}

SeverityWeights weights_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("weights must be a JSON object");
  SeverityWeights w;
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto f = std::find_if(std::begin(kWeightFields), std::end(kWeightFields),
                          [&](const WeightField& wf) { return it.key() == wf.name; });
    if (f == std::end(kWeightFields)) {
      throw std::invalid_argument(fmt::format("unknown weight '{}'", it.key()));
    }
    if (!it->is_number()) throw std::invalid_argument(fmt::format("weight {} must be a number", f->name));
    w.*f->member = it->get<double>();
  }
  check_weights(w);
  return w;
}

nlohmann::json weights_to_json(const SeverityWeights& w) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& f : kWeightFields) j[f.name] = w.*f.member;
  return j;
}

SeverityWeights load_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open weights file '{}'", path));
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument(fmt::format("weights file '{}' is not JSON", path));
  return weights_from_json(j);
}

double SeverityRecord::shed_gen_mw() const noexcept {
  double s = 0.0;
  for (const auto& i : islands) s += i.gen_mw;
  return s;
}

double SeverityRecord::shed_load_mw() const noexcept {
  double s = 0.0;
  for (const auto& i : islands) s += i.load_mw;
  return s;
}

std::vector<ViolationRecord> find_violations(const DcSolution& solution, const BaseGraph& graph) {
  std::vector<ViolationRecord> out;
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    if (!solved(solution, v)) continue;
    const auto& a = graph.vertex(v);
    if (a.v_max && a.voltage_mag > *a.v_max) {
      out.push_back({v, a.voltage_mag, *a.v_max, ViolationKind::BusVoltage});
    } else if (a.v_min && a.voltage_mag < *a.v_min) {
      out.push_back({v, a.voltage_mag, *a.v_min, ViolationKind::BusVoltage});
    }
  }
  if (!solution.converged) return out;
  for (const auto& e : graph.edges()) {
    if (e.rating_mva <= 0.0 || !solved(solution, e.u) || !solved(solution, e.v)) continue;
    const double mw = std::abs(solution.flows_mw[e.id]);
    if (mw > e.rating_mva) out.push_back({e.id, mw, e.rating_mva, ViolationKind::LineFlow});
  }
  return out;
}

SeverityRecord severity_index(const DcSolution& solution, const ShedAccounting& shed,
                              const BaseGraph& graph, const SeverityWeights& weights) {
  const double base = graph.base_mva();
  SeverityRecord r;
  double bus_sq = 0.0;
  double line_sq = 0.0;
  for (const auto& v : find_violations(solution, graph)) {
    const double d = v.value - v.limit;
    if (v.kind == ViolationKind::BusVoltage) {
      bus_sq += d * d;
    } else {
      line_sq += (d / base) * (d / base);
    }
  }
  double gen_sq = 0.0;
  double load_sq = 0.0;
  for (const auto& island : shed.islands) {
    gen_sq += (island.gen_mw / base) * (island.gen_mw / base);
    load_sq += (island.load_mw / base) * (island.load_mw / base);
  }
  r.breakdown.bus_voltage = weights.k_bus * bus_sq;
  r.breakdown.line_flow = weights.k_line * line_sq;
  r.breakdown.gen_shed = weights.k_gen_shed * gen_sq;
  r.breakdown.load_shed = weights.k_load_shed * load_sq;
  r.breakdown.divergence = solution.converged ? 0.0 : weights.k_div;
  r.breakdown.islanding = shed.split() ? weights.k_island : 0.0;
  r.si = r.breakdown.sum();
  r.islands = shed.islands;
  r.diverged = !solution.converged;
  return r;
}

std::vector<SeverityRecord> rank(std::vector<SeverityRecord> records) {
  std::sort(records.begin(), records.end(), [](const SeverityRecord& a, const SeverityRecord& b) {
    if (a.si != b.si) return a.si > b.si;
    return a.contingency < b.contingency;
  });
  return records;
}

}  // namespace gridscreen
