#include "gridscreen/graph.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace gridscreen {

const GraphEdge& BaseGraph::edge(EdgeId id) const {
  if (id >= edges_.size()) {
    throw GraphError(GraphErrc::UnknownEdge, fmt::format("unknown edge id {}", id));
  }
  return edges_[id];
}

const VertexAttrs& BaseGraph::vertex(VertexId v) const {
  if (v >= vertices_.size()) {
    throw GraphError(GraphErrc::VertexOutOfRange, fmt::format("vertex {} out of range", v));
  }
  return vertices_[v];
}

std::span<const Adjacent> BaseGraph::adjacency(VertexId v) const {
  if (v >= vertices_.size()) {
    throw GraphError(GraphErrc::VertexOutOfRange, fmt::format("vertex {} out of range", v));
  }
  return std::span<const Adjacent>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

std::optional<VertexId> BaseGraph::find_vertex(int bus_id) const {
  // Buses are few enough that a scan beats keeping a second index in sync.
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].bus_id == bus_id) return v;
  }
  return std::nullopt;
}

EdgeId BaseGraph::resolve(int a, int b, std::optional<int> ckt) const {
  auto va = find_vertex(a);
  auto vb = find_vertex(b);
  auto name = ckt ? fmt::format("{}-{}-{}", a, b, *ckt) : fmt::format("{}-{}", a, b);
  if (!va || !vb) {
    throw GraphError(GraphErrc::UnknownEdge, fmt::format("no in-service branch {}", name));
  }
  std::vector<EdgeId> matches;
  for (const auto& adj : adjacency(*va)) {
    if (adj.neighbor != *vb) continue;
    if (ckt && edges_[adj.edge].key.ckt != *ckt) continue;
    matches.push_back(adj.edge);
  }
  if (matches.empty()) {
    throw GraphError(GraphErrc::UnknownEdge, fmt::format("no in-service branch {}", name));
  }
  if (matches.size() > 1) {
    throw GraphError(GraphErrc::AmbiguousBranch,
                     fmt::format("branch {} has {} parallel circuits; give a circuit id", name,
                                 matches.size()));
  }
  return matches.front();
}

std::string BaseGraph::serialize() const {
  std::string out = fmt::format("base {} slack {} n {} m {}\n", base_mva_, slack_,
                                vertices_.size(), edges_.size());
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    const auto& a = vertices_[v];
    out += fmt::format("v {} {} {} {} {} {} {} {}:", v, a.bus_id, static_cast<int>(a.bus_type),
                       a.gen_mw, a.load_mw, a.voltage_mag, a.v_min.value_or(-1.0),
                       a.v_max.value_or(-1.0));
    for (const auto& adj : adjacency(v)) out += fmt::format(" {}/{}", adj.neighbor, adj.edge);
    out += '\n';
  }
  for (const auto& e : edges_) {
    out += fmt::format("e {} {} {} {} {} {} {}-{}-{}\n", e.id, e.u, e.v, e.reactance, e.rating_mva,
                       e.branch_index, e.key.from, e.key.to, e.key.ckt);
  }
  return out;
}

BaseGraph build_base_graph(const ValidatedNetwork& validated) {
  const auto& net = validated.network();
  BaseGraph g;
  g.base_mva_ = net.base_mva;
  g.slack_ = static_cast<VertexId>(validated.slack_index());

  g.vertices_.reserve(net.buses.size());
  for (const auto& b : net.buses) {
    g.vertices_.push_back(
        VertexAttrs{b.id, b.bus_type, b.gen_mw, b.load_mw, b.voltage_mag, b.v_min, b.v_max});
  }

  for (std::size_t k = 0; k < net.branches.size(); ++k) {
    const auto& br = net.branches[k];
    if (br.status != BranchStatus::InService) continue;
    g.edges_.push_back(GraphEdge{static_cast<VertexId>(validated.index_of(br.from_bus)),
                                 static_cast<VertexId>(validated.index_of(br.to_bus)),
                                 static_cast<EdgeId>(g.edges_.size()), br.reactance_x,
                                 br.rating_mva, k, BranchKey{br.from_bus, br.to_bus, br.circuit_id}});
  }

  // CSR adjacency; edges are visited in id order so each list comes out sorted.
  std::vector<std::size_t> degree(g.vertices_.size(), 0);
  for (const auto& e : g.edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets_.assign(g.vertices_.size() + 1, 0);
  for (std::size_t v = 0; v < degree.size(); ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : g.edges_) {
    g.adjacency_[cursor[e.u]++] = Adjacent{e.v, e.id};
    g.adjacency_[cursor[e.v]++] = Adjacent{e.u, e.id};
  }
  return g;
}

std::vector<Adjacent> ContingencyView::neighbors(VertexId v) const {
  std::vector<Adjacent> out;
  for_each_neighbor(v, [&](const Adjacent& a) { out.push_back(a); });
  return out;
}

ContingencyView derive_view(const BaseGraph& base, std::span<const EdgeId> outage) {
  ContingencyView view;
  view.base_ = &base;
  view.removed_.reserve(outage.size());
  for (auto e : outage) {
    if (e >= base.edge_count()) {
      throw GraphError(GraphErrc::UnknownEdge, fmt::format("unknown edge id {}", e));
    }
    if (std::find(view.removed_.begin(), view.removed_.end(), e) == view.removed_.end()) {
      view.removed_.push_back(e);
    }
  }
  std::sort(view.removed_.begin(), view.removed_.end());
  return view;
}

}  // namespace gridscreen
