#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gridscreen/dcflow.hpp"
#include "gridscreen/graph.hpp"
#include "gridscreen/topology.hpp"

namespace gridscreen {

/// Scaling constants of the severity index. Continuous terms are evaluated in
/// per-unit on the system MVA base, so k_line weighs (pu overload)^2 and the
/// shed weights weigh (pu shed)^2. k_div and k_island are flat penalties.
struct SeverityWeights {
  double k_bus = 1.0;
  double k_line = 1.0;
  double k_gen_shed = 10.0;
  double k_load_shed = 10.0;
  double k_div = 1e4;
  double k_island = 1e3;

  bool operator==(const SeverityWeights&) const = default;
};

/// Throws std::invalid_argument naming the first negative or non-finite weight.
void check_weights(const SeverityWeights& w);

SeverityWeights weights_from_json(const nlohmann::json& j);
nlohmann::json weights_to_json(const SeverityWeights& w);
SeverityWeights load_weights(const std::string& path);

/// The six addends of the index, already multiplied by their weights.
struct TermBreakdown {
  double bus_voltage = 0.0;
  double line_flow = 0.0;
  double gen_shed = 0.0;
  double load_shed = 0.0;
  double divergence = 0.0;
  double islanding = 0.0;

  double sum() const noexcept {
    return bus_voltage + line_flow + gen_shed + load_shed + divergence + islanding;
  }
  bool operator==(const TermBreakdown&) const = default;
};

enum class ViolationKind { BusVoltage, LineFlow };

struct ViolationRecord {
  std::size_t element;  // VertexId or EdgeId depending on kind
  double value;         // pu voltage, or |flow| in MW
  double limit;         // violated voltage bound, or rating in MW
  ViolationKind kind;
};

struct SeverityRecord {
  EdgeId contingency = 0;
  BranchKey edge;
  double si = 0.0;
  TermBreakdown breakdown;
  std::vector<IslandReport> islands;
  bool diverged = false;

  double shed_gen_mw() const noexcept;
  double shed_load_mw() const noexcept;
  bool operator==(const SeverityRecord&) const = default;
};

/// Voltage limits are checked against the input voltage magnitudes (the DC
/// model produces none); branches with rating 0 are never violated. Only
/// buses and branches of the solved component are considered.
std::vector<ViolationRecord> find_violations(const DcSolution& solution, const BaseGraph& graph);

SeverityRecord severity_index(const DcSolution& solution, const ShedAccounting& shed,
                              const BaseGraph& graph, const SeverityWeights& weights);

/// Descending by si; equal scores keep ascending contingency order.
std::vector<SeverityRecord> rank(std::vector<SeverityRecord> records);

}  // namespace gridscreen
