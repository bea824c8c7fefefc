#include "gridscreen/screening.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include <fmt/format.h>

namespace gridscreen {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

ScreeningContext::ScreeningContext(ValidatedNetwork network)
    : network_(std::move(network)) {
  auto start = Clock::now();
  graph_ = build_base_graph(network_);
  flow_.emplace(derive_view(graph_), graph_.slack_vertex());
  if (!flow_->ok()) {
    throw BaseCaseDiverged("base case is singular: network not connected from the slack bus");
  }
  base_ = flow_->solve();
  init_ms_ = ms_since(start);
}

std::vector<EdgeId> ScreeningContext::all_contingencies() const {
  std::vector<EdgeId> ids(graph_.edge_count());
  std::iota(ids.begin(), ids.end(), EdgeId{0});
  return ids;
}

ScenarioOutcome evaluate_scenario(const ScreeningContext& ctx, EdgeId contingency,
                                  BfsWorkspace& workspace) {
  auto start = Clock::now();
  const auto& graph = ctx.graph();
  const EdgeId outage[] = {contingency};
  auto view = derive_view(graph, outage);
  const auto& edge = graph.edge(contingency);

  ScenarioOutcome out;
  out.contingency = contingency;
  out.connectivity = bi_bfs_check(view, edge.u, edge.v, workspace);
  if (out.connectivity.status == Connectivity::Connected) {
    try {
      auto factors = compute_lodf(ctx.flow(), contingency);
      out.solution = superpose(ctx.base_solution(), factors, contingency);
    } catch (const BridgeOutage&) {
      // Topologically connected but numerically indistinguishable from a
      // bridge; report as divergence rather than trust the factors.
      out.solution = DcSolution{};
      out.solution.slack = ctx.base_solution().slack;
      out.solution.island_id.assign(graph.vertex_count(), 0);
    }
  } else {
    const std::vector<std::vector<VertexId>> islands{out.connectivity.island_vertices};
    auto resolved = island_resolve(view, islands);
    out.solution = std::move(resolved.solution);
    out.shed = std::move(resolved.shed);
    out.temporary_slack = resolved.temporary_slack;
  }
  out.elapsed_ms = ms_since(start);
  return out;
}

SeverityRecord score_scenario(const ScreeningContext& ctx, const ScenarioOutcome& outcome,
                              const SeverityWeights& weights) {
  auto rec = severity_index(outcome.solution, outcome.shed, ctx.graph(), weights);
  rec.contingency = outcome.contingency;
  rec.edge = ctx.graph().edge(outcome.contingency).key;
  return rec;
}

std::vector<ScenarioOutcome> evaluate_all(const ScreeningContext& ctx,
                                          std::span<const EdgeId> contingencies,
                                          unsigned parallelism) {
  if (parallelism == 0) throw std::invalid_argument("parallelism must be at least 1");
  for (auto id : contingencies) (void)ctx.graph().edge(id);

  std::vector<ScenarioOutcome> outcomes(contingencies.size());
  const auto workers =
      static_cast<unsigned>(std::min<std::size_t>(parallelism, contingencies.size()));
  if (workers <= 1) {
    BfsWorkspace ws;
    for (std::size_t i = 0; i < contingencies.size(); ++i) {
      outcomes[i] = evaluate_scenario(ctx, contingencies[i], ws);
    }
    return outcomes;
  }

  // Each worker claims indices from a shared counter and writes only its own
  // slots, so the output order is fixed by the input order.
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        BfsWorkspace ws;
        try {
          for (auto i = next.fetch_add(1); i < contingencies.size(); i = next.fetch_add(1)) {
            outcomes[i] = evaluate_scenario(ctx, contingencies[i], ws);
          }
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next = contingencies.size();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return outcomes;
}

ScenarioCounts count_scenarios(std::span<const SeverityRecord> records) {
  ScenarioCounts c;
  for (const auto& r : records) {
    ++c.total;
    if (r.diverged) {
      ++c.diverged;
    } else if (r.islands.empty()) {
      ++c.no_island;
    } else {
      switch (r.islands.front().island_class) {
        case IslandClass::Generator: ++c.generator_islands; break;
        case IslandClass::Load: ++c.load_islands; break;
        case IslandClass::ActiveIsland: ++c.active_islands; break;
        case IslandClass::Dead: ++c.dead_islands; break;
      }
    }
  }
  return c;
}

ScreeningReport build_report(const ScreeningContext& ctx,
                             std::span<const ScenarioOutcome> outcomes,
                             const SeverityWeights& weights, std::optional<std::size_t> top_n) {
  check_weights(weights);
  std::vector<SeverityRecord> records;
  records.reserve(outcomes.size());
  ScreeningReport report;
  for (const auto& o : outcomes) {
    records.push_back(score_scenario(ctx, o, weights));
    report.timings.solve_ms_total += o.elapsed_ms;
  }
  report.records = rank(std::move(records));
  report.counts = count_scenarios(report.records);
  if (!outcomes.empty()) {
    report.timings.per_scenario_avg_ms =
        report.timings.solve_ms_total / static_cast<double>(outcomes.size());
  }
  if (top_n && report.records.size() > *top_n) report.records.resize(*top_n);
  return report;
}

ScreeningReport run_screening(const ScreeningContext& ctx, const ScreeningConfig& config) {
  auto start = Clock::now();
  auto ids = config.contingencies ? *config.contingencies : ctx.all_contingencies();
  auto outcomes = evaluate_all(ctx, ids, config.parallelism);
  auto report = build_report(ctx, outcomes, config.weights, config.top_n);
  report.timings.graph_init_ms = ctx.init_ms();
  report.timings.wall_ms = ms_since(start);
  return report;
}

ScreeningReport run_screening(const ValidatedNetwork& network, const ScreeningConfig& config) {
  auto start = Clock::now();
  check_weights(config.weights);
  ScreeningContext ctx(network);
  auto report = run_screening(ctx, config);
  report.timings.wall_ms = ms_since(start);
  return report;
}

}  // namespace gridscreen
