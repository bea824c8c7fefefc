#include <benchmark/benchmark.h>

#include <filesystem>

#include "gridscreen/gridscreen.hpp"

using namespace gridscreen;

namespace {

const ValidatedNetwork& ieee118() {
  static const ValidatedNetwork net =
      validate(load_network(std::filesystem::path(GRIDSCREEN_DATA_DIR) / "ieee118.cdf"));
  return net;
}

const ScreeningContext& context118() {
  static const ScreeningContext ctx(ieee118());
  return ctx;
}

}  // namespace

static void BM_BuildContext(benchmark::State& state) {
  const auto& net = ieee118();
  for (auto _ : state) {
    ScreeningContext ctx(net);
    benchmark::DoNotOptimize(ctx.base_solution().slack_injection_mw);
  }
}

// Every single-branch outage through the bidirectional search only.
static void BM_BiBfsAllOutages(benchmark::State& state) {
  const auto& graph = context118().graph();
  BfsWorkspace ws;
  for (auto _ : state) {
    std::size_t split = 0;
    for (const auto& e : graph.edges()) {
      const EdgeId outage[] = {e.id};
      auto view = derive_view(graph, outage);
      split += bi_bfs_check(view, e.u, e.v, ws).status == Connectivity::Split;
    }
    benchmark::DoNotOptimize(split);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(graph.edge_count()));
}

static void BM_TarjanBridges(benchmark::State& state) {
  const auto& graph = context118().graph();
  for (auto _ : state) benchmark::DoNotOptimize(tarjan_bridges(graph));
}

static void BM_LodfColumn(benchmark::State& state) {
  const auto& ctx = context118();
  EdgeId k = 0;
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(compute_lodf(ctx.flow(), k));
    } catch (const BridgeOutage&) {
    }
    k = (k + 1) % static_cast<EdgeId>(ctx.graph().edge_count());
  }
}

static void BM_FullSweep(benchmark::State& state) {
  const auto& ctx = context118();
  ScreeningConfig cfg;
  cfg.parallelism = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    auto report = run_screening(ctx, cfg);
    benchmark::DoNotOptimize(report.records.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(ctx.graph().edge_count()));
}

BENCHMARK(BM_BuildContext);
BENCHMARK(BM_BiBfsAllOutages);
BENCHMARK(BM_TarjanBridges);
BENCHMARK(BM_LodfColumn);
BENCHMARK(BM_FullSweep)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime();

BENCHMARK_MAIN();
