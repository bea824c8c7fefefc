#include <gtest/gtest.h>

#include <random>

#include "gridscreen/topology.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace gridscreen {
namespace {

using testing::branch;
using testing::bus;

struct Built {
  explicit Built(PowerNetwork net) : network(validate(std::move(net))), graph(build_base_graph(network)) {}
  ValidatedNetwork network;
  BaseGraph graph;

  VertexId v(int bus_id) const { return *graph.find_vertex(bus_id); }
  std::vector<int> buses(std::span<const VertexId> vs) const {
    std::vector<int> out;
    for (auto x : vs) out.push_back(graph.vertex(x).bus_id);
    std::sort(out.begin(), out.end());
    return out;
  }
  ConnectivityResult outage(EdgeId e) const {
    auto view = derive_view(graph, std::vector<EdgeId>{e});
    return bi_bfs_check(view, graph.edge(e).u, graph.edge(e).v);
  }
};

PowerNetwork path3() {
  PowerNetwork net;
  net.buses = {bus(1, BusType::Slack), bus(2, BusType::PQ, 0, 5), bus(3, BusType::PQ, 0, 5)};
  net.branches = {branch(1, 2, 0.1), branch(2, 3, 0.1)};
  return net;
}

TEST(BiBfs, EightBusBridgeIsolates6And7) {
  Built b(testing::load_fixture("eight_bus.json"));
  auto r = b.outage(b.graph.resolve(2, 6));
  EXPECT_EQ(r.status, Connectivity::Split);
  EXPECT_EQ(b.buses(r.island_vertices), (std::vector<int>{6, 7}));
}

TEST(BiBfs, EightBusSecondPathThrough3) {
  Built b(testing::load_fixture("eight_bus.json"));
  auto r = b.outage(b.graph.resolve(1, 2));
  EXPECT_EQ(r.status, Connectivity::Connected);
  EXPECT_TRUE(r.island_vertices.empty());
  EXPECT_LE(r.frontier_levels, 2u);
}

TEST(BiBfs, ParallelTwinConnectsAtFirstLevel) {
  Built b(testing::parallel_pair());
  auto r = b.outage(b.graph.resolve(1, 2, 1));
  EXPECT_EQ(r.status, Connectivity::Connected);
  EXPECT_EQ(r.frontier_levels, 1u);
}

TEST(BiBfs, SlackSideIsNeverTheIsland) {
  // Slack at the leaf: the 1 side runs dry first but is the mainland.
  Built b(path3());
  auto r = b.outage(b.graph.resolve(1, 2));
  EXPECT_EQ(r.status, Connectivity::Split);
  EXPECT_EQ(b.buses(r.island_vertices), (std::vector<int>{2, 3}));
  r = b.outage(b.graph.resolve(2, 3));
  EXPECT_EQ(b.buses(r.island_vertices), (std::vector<int>{3}));
}

TEST(BiBfs, EndpointNotInGraph) {
  Built b(path3());
  auto view = derive_view(b.graph, std::vector<EdgeId>{0});
  try {
    bi_bfs_check(view, 0, 3);
    FAIL();
  } catch (const TopologyError& e) {
    EXPECT_EQ(e.code(), TopologyErrc::EndpointNotInGraph);
  }
}

TEST(BiBfs, WorkspaceReuseGivesSameAnswers) {
  Built b(testing::load_fixture("ieee118.cdf"));
  BfsWorkspace ws;
  for (const auto& e : b.graph.edges()) {
    auto view = derive_view(b.graph, std::vector<EdgeId>{e.id});
    auto shared = bi_bfs_check(view, e.u, e.v, ws);
    auto fresh = bi_bfs_check(view, e.u, e.v);
    EXPECT_EQ(shared.status, fresh.status);
    EXPECT_EQ(shared.island_vertices, fresh.island_vertices);
  }
}

TEST(BiBfs, Ieee118KnownBridges) {
  Built b(testing::load_fixture("ieee118.cdf"));
  auto r = b.outage(b.graph.resolve(8, 9));
  ASSERT_EQ(r.status, Connectivity::Split);
  EXPECT_EQ(b.buses(r.island_vertices), (std::vector<int>{9, 10}));
  r = b.outage(b.graph.resolve(85, 86));
  ASSERT_EQ(r.status, Connectivity::Split);
  EXPECT_EQ(b.buses(r.island_vertices), (std::vector<int>{86, 87}));
}

TEST(ClassifyIsland, Ieee118Rows) {
  Built b(testing::load_fixture("ieee118.cdf"));
  auto gen = classify_island(b.outage(b.graph.resolve(8, 9)).island_vertices, b.graph);
  EXPECT_EQ(gen.island_class, IslandClass::Generator);
  EXPECT_EQ(gen.gen_count, 1u);
  EXPECT_EQ(gen.load_count, 1u);
  EXPECT_DOUBLE_EQ(gen.gen_mw, 450.0);
  EXPECT_DOUBLE_EQ(gen.load_mw, 0.0);

  auto active = classify_island(b.outage(b.graph.resolve(85, 86)).island_vertices, b.graph);
  EXPECT_EQ(active.island_class, IslandClass::ActiveIsland);
  EXPECT_DOUBLE_EQ(active.gen_mw, 4.0);
  EXPECT_DOUBLE_EQ(active.load_mw, 21.0);
}

TEST(ClassifyIsland, LoadOnlyAndDead) {
  PowerNetwork net = path3();
  net.buses.push_back(bus(4, BusType::PQ));
  net.branches.push_back(branch(3, 4, 0.1));
  Built b(net);
  auto load = classify_island(std::vector<VertexId>{b.v(3)}, b.graph);
  EXPECT_EQ(load.island_class, IslandClass::Load);
  EXPECT_EQ(load.gen_count, 0u);
  EXPECT_EQ(load.load_count, 1u);
  auto dead = classify_island(std::vector<VertexId>{b.v(4)}, b.graph);
  EXPECT_EQ(dead.island_class, IslandClass::Dead);
  EXPECT_EQ(dead.bus_ids, (std::vector<int>{4}));
}

TEST(ClassifyIsland, Errors) {
  Built b(path3());
  try {
    classify_island({}, b.graph);
    FAIL();
  } catch (const TopologyError& e) {
    EXPECT_EQ(e.code(), TopologyErrc::EmptyIsland);
  }
  try {
    classify_island(std::vector<VertexId>{17}, b.graph);
    FAIL();
  } catch (const TopologyError& e) {
    EXPECT_EQ(e.code(), TopologyErrc::VertexOutOfRange);
  }
}

TEST(ClassifyIsland, ClassNamesRoundTrip) {
  for (auto c : {IslandClass::Generator, IslandClass::Load, IslandClass::ActiveIsland, IslandClass::Dead})
    EXPECT_EQ(island_class_from_string(to_string(c)), c);
  EXPECT_THROW(island_class_from_string("Mainland"), std::invalid_argument);
}

TEST(TarjanBridges, PathAndTriangle) {
  Built path(path3());
  EXPECT_EQ(tarjan_bridges(path.graph), (std::vector<EdgeId>{0, 1}));
  Built tri(testing::load_fixture("triangle.json"));
  EXPECT_TRUE(tarjan_bridges(tri.graph).empty());
  Built twin(testing::parallel_pair());
  EXPECT_TRUE(tarjan_bridges(twin.graph).empty());
}

TEST(TarjanBridges, MatchesBruteForce) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    testing::RandomNetworkOptions opt;
    opt.buses = 5 + trial * 7;
    opt.parallel_probability = 0.15;
    auto net = testing::random_network(rng, opt);
    auto oracle = testing::brute_force_bridges(net);
    Built b(net);
    std::vector<std::size_t> got;
    for (auto e : tarjan_bridges(b.graph)) got.push_back(b.graph.edge(e).branch_index);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, oracle) << "trial " << trial;
  }
}

TEST(EnumerateComponent, Examples) {
  Built b(testing::load_fixture("eight_bus.json"));
  auto cut = derive_view(b.graph, std::vector<EdgeId>{b.graph.resolve(2, 6)});
  EXPECT_EQ(b.buses(enumerate_component(cut, b.v(6))), (std::vector<int>{6, 7}));
  EXPECT_EQ(enumerate_component(derive_view(b.graph), b.v(4)).size(), 8u);

  auto isolated = derive_view(b.graph, std::vector<EdgeId>{b.graph.resolve(2, 6), b.graph.resolve(6, 7)});
  EXPECT_EQ(b.buses(enumerate_component(isolated, b.v(7))), (std::vector<int>{7}));
  EXPECT_THROW(enumerate_component(cut, 8), TopologyError);
}

class RandomGraphs : public ::testing::TestWithParam<int> {};

// Split verdicts agree with the lowlink oracle, islands partition the
// vertex set, endpoint order does not matter, and every Connected verdict
// is backed by a real path.
TEST_P(RandomGraphs, BiBfsProperties) {
  std::mt19937_64 rng(1000 + GetParam());
  testing::RandomNetworkOptions opt;
  opt.buses = 10 + static_cast<std::size_t>(GetParam()) * 19;
  opt.extra_edge_ratio = GetParam() % 2 ? 0.15 : 0.5;
  opt.parallel_probability = 0.1;
  Built b(testing::random_network(rng, opt));
  auto bridges = tarjan_bridges(b.graph);
  BfsWorkspace ws;
  for (const auto& e : b.graph.edges()) {
    auto view = derive_view(b.graph, std::vector<EdgeId>{e.id});
    auto r = bi_bfs_check(view, e.u, e.v, ws);
    bool is_bridge = std::binary_search(bridges.begin(), bridges.end(), e.id);
    ASSERT_EQ(r.status == Connectivity::Split, is_bridge) << "edge " << e.id;

    auto flipped = bi_bfs_check(view, e.v, e.u, ws);
    EXPECT_EQ(flipped.status, r.status);
    EXPECT_EQ(flipped.island_vertices, r.island_vertices);

    auto from_u = enumerate_component(view, e.u);
    bool path_exists = std::binary_search(from_u.begin(), from_u.end(), e.v);
    EXPECT_EQ(r.status == Connectivity::Connected, path_exists);

    if (r.status == Connectivity::Split) {
      const auto& island = r.island_vertices;
      ASSERT_FALSE(island.empty());
      bool has_u = std::binary_search(island.begin(), island.end(), e.u);
      bool has_v = std::binary_search(island.begin(), island.end(), e.v);
      EXPECT_NE(has_u, has_v);
      EXPECT_FALSE(std::binary_search(island.begin(), island.end(), b.graph.slack_vertex()));
      auto mainland = enumerate_component(view, b.graph.slack_vertex());
      std::vector<VertexId> both;
      std::set_union(island.begin(), island.end(), mainland.begin(), mainland.end(),
                     std::back_inserter(both));
      EXPECT_EQ(both.size(), island.size() + mainland.size());
      EXPECT_EQ(both.size(), b.graph.vertex_count());
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomGraphs, ::testing::Range(0, 24));

}  // namespace
}  // namespace gridscreen
