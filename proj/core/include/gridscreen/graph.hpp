#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridscreen/network.hpp"

namespace gridscreen {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Adjacent {
  VertexId neighbor;
  EdgeId edge;
  bool operator==(const Adjacent&) const = default;
};

/// Identifies a branch the way operators name it: bus numbers plus circuit.
struct BranchKey {
  int from = 0;
  int to = 0;
  int ckt = 1;
  bool operator==(const BranchKey&) const = default;
};

struct GraphEdge {
  VertexId u;  // from-bus vertex; positive flow runs u -> v
  VertexId v;
  EdgeId id;
  double reactance;
  double rating_mva;
  std::size_t branch_index;  // position in PowerNetwork::branches
  BranchKey key;
};

struct VertexAttrs {
  int bus_id;
  BusType bus_type;
  double gen_mw;
  double load_mw;
  double voltage_mag;
  std::optional<double> v_min;
  std::optional<double> v_max;
};

enum class GraphErrc { UnknownEdge, VertexOutOfRange, AmbiguousBranch };

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  GraphErrc code() const noexcept { return code_; }

 private:
  GraphErrc code_;
};

/// Immutable bus-branch multigraph. One vertex per bus (same index as the
/// validated network), one undirected edge per in-service branch. Adjacency
/// lists are sorted by edge id.
class BaseGraph {
 public:
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  double base_mva() const noexcept { return base_mva_; }
  VertexId slack_vertex() const noexcept { return slack_; }

  std::span<const GraphEdge> edges() const noexcept { return edges_; }
  const GraphEdge& edge(EdgeId id) const;
  const VertexAttrs& vertex(VertexId v) const;
  std::span<const Adjacent> adjacency(VertexId v) const;

  std::optional<VertexId> find_vertex(int bus_id) const;

  /// Resolves an operator-facing branch name to an edge. Orientation of
  /// (a, b) does not matter. Without a circuit, a single edge between the two
  /// buses is returned and several parallel circuits are an AmbiguousBranch.
  EdgeId resolve(int a, int b, std::optional<int> ckt = std::nullopt) const;

  /// Canonical text form of the whole structure; equal strings mean equal graphs.
  std::string serialize() const;

 private:
  friend BaseGraph build_base_graph(const ValidatedNetwork& network);

  double base_mva_ = 100.0;
  VertexId slack_ = 0;
  std::vector<VertexAttrs> vertices_;
  std::vector<GraphEdge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Adjacent> adjacency_;
};

BaseGraph build_base_graph(const ValidatedNetwork& network);

/// Outage overlay on a shared BaseGraph. Stores only the removed edge ids, so
/// deriving a view costs O(|outage|) regardless of graph size. The base graph
/// must outlive every view derived from it.
class ContingencyView {
 public:
  const BaseGraph& base() const noexcept { return *base_; }
  std::span<const EdgeId> removed() const noexcept { return removed_; }

  bool is_removed(EdgeId e) const noexcept {
    for (auto r : removed_)
      if (r == e) return true;
    return false;
  }

  template <typename Fn>
  void for_each_neighbor(VertexId v, Fn&& fn) const {
    for (const auto& a : base_->adjacency(v)) {
      if (!is_removed(a.edge)) fn(a);
    }
  }

  std::vector<Adjacent> neighbors(VertexId v) const;

 private:
  friend ContingencyView derive_view(const BaseGraph& base, std::span<const EdgeId> outage);
  const BaseGraph* base_ = nullptr;
  std::vector<EdgeId> removed_;
};

ContingencyView derive_view(const BaseGraph& base, std::span<const EdgeId> outage = {});

inline std::vector<Adjacent> view_neighbors(const ContingencyView& view, VertexId v) {
  return view.neighbors(v);
}

}  // namespace gridscreen
