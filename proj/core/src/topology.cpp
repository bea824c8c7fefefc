#include "gridscreen/topology.hpp"

#include <algorithm>
#include <utility>

#include <fmt/format.h>

namespace gridscreen {

std::string_view to_string(IslandClass c) {
  switch (c) {
    case IslandClass::Generator: return "Generator";
    case IslandClass::Load: return "Load";
    case IslandClass::ActiveIsland: return "ActiveIsland";
    case IslandClass::Dead: return "Dead";
  }
  return "Dead";
}

IslandClass island_class_from_string(std::string_view s) {
  if (s == "Generator") return IslandClass::Generator;
  if (s == "Load") return IslandClass::Load;
  if (s == "ActiveIsland") return IslandClass::ActiveIsland;
  if (s == "Dead") return IslandClass::Dead;
  throw std::invalid_argument(fmt::format("unknown island class '{}'", s));
}

void BfsWorkspace::prepare(std::size_t vertex_count) {
  for (auto& m : mark) {
    if (m.size() != vertex_count) m.assign(vertex_count, 0);
  }
  if (++generation_ == 0) {
    // Stamp wrapped; start over with clean marks.
    for (auto& m : mark) std::fill(m.begin(), m.end(), 0);
    generation_ = 1;
  }
  for (int s = 0; s < 2; ++s) {
    visited[s].clear();
    frontier[s].clear();
  }
  next.clear();
}

namespace {

// Expands one level of side `s`. Returns true if the other side was touched.
bool expand_level(const ContingencyView& view, BfsWorkspace& ws, int s, bool watch_other) {
  const auto stamp = ws.generation();
  auto& mine = ws.mark[s];
  const auto& other = ws.mark[1 - s];
  const auto& base = view.base();
  ws.next.clear();
  for (VertexId v : ws.frontier[s]) {
    for (const auto& a : base.adjacency(v)) {
      if (view.is_removed(a.edge)) continue;
      if (watch_other && other[a.neighbor] == stamp) return true;
      if (mine[a.neighbor] == stamp) continue;
      mine[a.neighbor] = stamp;
      ws.next.push_back(a.neighbor);
      ws.visited[s].push_back(a.neighbor);
    }
  }
  std::swap(ws.frontier[s], ws.next);
  return false;
}

}  // namespace

ConnectivityResult bi_bfs_check(const ContingencyView& view, VertexId i, VertexId j,
                                BfsWorkspace& ws) {
  const auto& base = view.base();
  const auto n = base.vertex_count();
  if (i >= n || j >= n) {
    throw TopologyError(TopologyErrc::EndpointNotInGraph,
                        fmt::format("endpoint ({}, {}) outside graph of {} vertices", i, j, n));
  }

  ConnectivityResult result;
  if (i == j) {
    result.visited_count = 1;
    return result;
  }

  ws.prepare(n);
  const auto stamp = ws.generation();
  const VertexId start[2] = {i, j};
  for (int s = 0; s < 2; ++s) {
    ws.mark[s][start[s]] = stamp;
    ws.visited[s].push_back(start[s]);
    ws.frontier[s].push_back(start[s]);
  }

  for (;;) {
    for (int s = 0; s < 2; ++s) {
      bool met = expand_level(view, ws, s, true);
      ++result.frontier_levels;
      if (met) {
        result.status = Connectivity::Connected;
        result.visited_count = ws.visited[0].size() + ws.visited[1].size();
        return result;
      }
      if (!ws.frontier[s].empty()) continue;

      // Side s is exhausted without meeting: the outage is a bridge.
      int island_side = s;
      if (ws.mark[s][base.slack_vertex()] == stamp) {
        island_side = 1 - s;
        while (!ws.frontier[island_side].empty()) {
          expand_level(view, ws, island_side, false);
          ++result.frontier_levels;
        }
      }
      result.status = Connectivity::Split;
      result.island_vertices = ws.visited[island_side];
      std::sort(result.island_vertices.begin(), result.island_vertices.end());
      result.visited_count = ws.visited[0].size() + ws.visited[1].size();
      return result;
    }
  }
}

ConnectivityResult bi_bfs_check(const ContingencyView& view, VertexId i, VertexId j) {
  BfsWorkspace ws;
  return bi_bfs_check(view, i, j, ws);
}

IslandReport classify_island(std::span<const VertexId> vertices, const BaseGraph& graph) {
  if (vertices.empty()) throw TopologyError(TopologyErrc::EmptyIsland, "island has no vertices");
  IslandReport r;
  r.vertices.assign(vertices.begin(), vertices.end());
  std::sort(r.vertices.begin(), r.vertices.end());
  for (VertexId v : r.vertices) {
    if (v >= graph.vertex_count()) {
      throw TopologyError(TopologyErrc::VertexOutOfRange, fmt::format("vertex {} out of range", v));
    }
    const auto& a = graph.vertex(v);
    r.bus_ids.push_back(a.bus_id);
    r.gen_mw += a.gen_mw;
    r.load_mw += a.load_mw;
    // A bus counts as a generator when it is voltage-controlled or injects MW;
    // any other bus, or one drawing MW, counts as a load bus.
    bool is_gen = a.bus_type != BusType::PQ || a.gen_mw > 0.0;
    if (is_gen) ++r.gen_count;
    if (!is_gen || a.load_mw > 0.0) ++r.load_count;
  }
  bool gen = r.gen_mw > 0.0;
  bool load = r.load_mw > 0.0;
  r.island_class = gen && load ? IslandClass::ActiveIsland
                   : gen       ? IslandClass::Generator
                   : load      ? IslandClass::Load
                               : IslandClass::Dead;
  return r;
}

std::vector<EdgeId> tarjan_bridges(const BaseGraph& graph) {
  const auto n = graph.vertex_count();
  constexpr std::size_t kUnvisited = 0;
  std::vector<std::size_t> disc(n, kUnvisited), low(n, 0);
  std::size_t timer = 0;
  std::vector<EdgeId> bridges;

  struct Frame {
    VertexId v;
    EdgeId via;  // edge used to enter v; ignored for roots
    bool root;
    std::size_t next;  // position in adjacency(v)
  };
  std::vector<Frame> stack;

  for (VertexId r = 0; r < n; ++r) {
    if (disc[r] != kUnvisited) continue;
    disc[r] = low[r] = ++timer;
    stack.push_back({r, 0, true, 0});
    while (!stack.empty()) {
      auto& f = stack.back();
      auto adj = graph.adjacency(f.v);
      if (f.next < adj.size()) {
        const auto a = adj[f.next++];
        if (!f.root && a.edge == f.via) continue;
        if (disc[a.neighbor] == kUnvisited) {
          disc[a.neighbor] = low[a.neighbor] = ++timer;
          stack.push_back({a.neighbor, a.edge, false, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[a.neighbor]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (!done.root) {
        const auto& edge = graph.edge(done.via);
        VertexId parent = edge.u == done.v ? edge.v : edge.u;
        low[parent] = std::min(low[parent], low[done.v]);
        if (low[done.v] > disc[parent]) bridges.push_back(done.via);
      }
    }
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

std::vector<VertexId> enumerate_component(const ContingencyView& view, VertexId seed) {
  const auto& base = view.base();
  if (seed >= base.vertex_count()) {
    throw TopologyError(TopologyErrc::VertexOutOfRange, fmt::format("seed {} out of range", seed));
  }
  std::vector<char> seen(base.vertex_count(), 0);
  std::vector<VertexId> order{seed};
  seen[seed] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    view.for_each_neighbor(order[head], [&](const Adjacent& a) {
      if (!seen[a.neighbor]) {
        seen[a.neighbor] = 1;
        order.push_back(a.neighbor);
      }
    });
  }
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace gridscreen
