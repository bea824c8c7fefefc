#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gridscreen/graph.hpp"

namespace gridscreen {

enum class Connectivity { Connected, Split };

/// Outcome of a bidirectional search around one outaged branch.
/// `island_vertices` is the side cut off from the slack bus (sorted, empty
/// when Connected). `frontier_levels` counts level expansions over both sides.
struct ConnectivityResult {
  Connectivity status = Connectivity::Connected;
  std::vector<VertexId> island_vertices;
  std::size_t visited_count = 0;
  std::size_t frontier_levels = 0;
};

enum class IslandClass { Generator, Load, ActiveIsland, Dead };

std::string_view to_string(IslandClass c);
IslandClass island_class_from_string(std::string_view s);

struct IslandReport {
  std::vector<VertexId> vertices;
  std::vector<int> bus_ids;
  std::size_t gen_count = 0;
  std::size_t load_count = 0;
  double gen_mw = 0.0;
  double load_mw = 0.0;
  IslandClass island_class = IslandClass::Dead;

  bool operator==(const IslandReport&) const = default;
};

enum class TopologyErrc { EndpointNotInGraph, EmptyIsland, VertexOutOfRange };

class TopologyError : public std::runtime_error {
 public:
  TopologyError(TopologyErrc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  TopologyErrc code() const noexcept { return code_; }

 private:
  TopologyErrc code_;
};

/// Scratch space for repeated searches on graphs of the same size. Marks are
/// generation-stamped so a search never clears O(n) state. Not thread-safe;
/// give each worker its own.
class BfsWorkspace {
 public:
  void prepare(std::size_t vertex_count);

  std::uint32_t generation() const noexcept { return generation_; }
  std::vector<std::uint32_t> mark[2];
  std::vector<VertexId> visited[2];
  std::vector<VertexId> frontier[2];
  std::vector<VertexId> next;

 private:
  std::uint32_t generation_ = 0;
};

/// Level-synchronous search from both ends of an outaged branch, expanding
/// one level from `i` and then one level from `j`. Stops with Connected as
/// soon as either side touches a vertex the other side has visited, or with
/// Split once a side runs out of frontier. The slack bus's side is never the
/// island; if the exhausted side holds the slack, the other side is completed
/// and reported instead.
///
/// The branch being tested is expected to be among the view's removed edges;
/// otherwise it is itself the second path and the result is Connected.
ConnectivityResult bi_bfs_check(const ContingencyView& view, VertexId i, VertexId j,
                                BfsWorkspace& workspace);
ConnectivityResult bi_bfs_check(const ContingencyView& view, VertexId i, VertexId j);

IslandReport classify_island(std::span<const VertexId> vertices, const BaseGraph& graph);

/// Lowlink bridge search over the whole base graph (all components).
/// Parallel circuits never qualify. Returns ids in ascending order.
std::vector<EdgeId> tarjan_bridges(const BaseGraph& graph);

/// Plain BFS closure of `seed` within the view, sorted ascending.
std::vector<VertexId> enumerate_component(const ContingencyView& view, VertexId seed);

}  // namespace gridscreen
