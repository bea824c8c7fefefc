#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gridscreen/dcflow.hpp"
#include "gridscreen/graph.hpp"
#include "gridscreen/network.hpp"
#include "gridscreen/severity.hpp"
#include "gridscreen/topology.hpp"

namespace gridscreen {

class BaseCaseDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScreeningConfig {
  /// Edge ids to outage one at a time; unset means every in-service branch.
  std::optional<std::vector<EdgeId>> contingencies;
  SeverityWeights weights;
  unsigned parallelism = 1;
  /// Truncates the ranked record list; counts always cover every scenario.
  std::optional<std::size_t> top_n;
};

struct ScenarioCounts {
  std::size_t generator_islands = 0;
  std::size_t load_islands = 0;
  std::size_t active_islands = 0;
  std::size_t dead_islands = 0;
  std::size_t no_island = 0;
  std::size_t diverged = 0;
  std::size_t total = 0;

  bool operator==(const ScenarioCounts&) const = default;
};

struct ScreeningTimings {
  double graph_init_ms = 0.0;
  double solve_ms_total = 0.0;
  double per_scenario_avg_ms = 0.0;
  double wall_ms = 0.0;

  bool operator==(const ScreeningTimings&) const = default;
};

struct ScreeningReport {
  std::vector<SeverityRecord> records;
  ScenarioCounts counts;
  ScreeningTimings timings;

  bool operator==(const ScreeningReport&) const = default;
};

/// Everything shared by all scenarios of one base case: the validated
/// network, its graph, the factorised B' and the base-case flows. Immutable
/// once built and safe to read from many threads.
class ScreeningContext {
 public:
  /// Throws BaseCaseDiverged if the base case cannot be solved.
  explicit ScreeningContext(ValidatedNetwork network);
  ScreeningContext(const ScreeningContext&) = delete;
  ScreeningContext& operator=(const ScreeningContext&) = delete;

  const ValidatedNetwork& network() const noexcept { return network_; }
  const BaseGraph& graph() const noexcept { return graph_; }
  const DcPowerFlow& flow() const noexcept { return *flow_; }
  const DcSolution& base_solution() const noexcept { return base_; }
  double init_ms() const noexcept { return init_ms_; }

  std::vector<EdgeId> all_contingencies() const;

 private:
  ValidatedNetwork network_;
  BaseGraph graph_;
  std::optional<DcPowerFlow> flow_;
  DcSolution base_;
  double init_ms_ = 0.0;
};

/// Topology and flow result of one N-1 scenario, independent of weights.
struct ScenarioOutcome {
  EdgeId contingency = 0;
  ConnectivityResult connectivity;
  DcSolution solution;
  ShedAccounting shed;
  bool temporary_slack = false;
  double elapsed_ms = 0.0;
};

ScenarioOutcome evaluate_scenario(const ScreeningContext& ctx, EdgeId contingency,
                                  BfsWorkspace& workspace);

SeverityRecord score_scenario(const ScreeningContext& ctx, const ScenarioOutcome& outcome,
                              const SeverityWeights& weights);

/// Evaluates every contingency, fanning out over `parallelism` workers. The
/// result is in input order and does not depend on the worker count.
std::vector<ScenarioOutcome> evaluate_all(const ScreeningContext& ctx,
                                          std::span<const EdgeId> contingencies,
                                          unsigned parallelism);

ScenarioCounts count_scenarios(std::span<const SeverityRecord> records);

/// Scores, ranks and counts already evaluated outcomes. Timings other than
/// solve_ms_total and per_scenario_avg_ms are left for the caller.
ScreeningReport build_report(const ScreeningContext& ctx,
                             std::span<const ScenarioOutcome> outcomes,
                             const SeverityWeights& weights,
                             std::optional<std::size_t> top_n = std::nullopt);

ScreeningReport run_screening(const ScreeningContext& ctx, const ScreeningConfig& config);
ScreeningReport run_screening(const ValidatedNetwork& network, const ScreeningConfig& config);

}  // namespace gridscreen
