#include "gridscreen/dcflow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <fmt/format.h>

namespace gridscreen {

struct DcPowerFlow::Factor {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

BridgeOutage::BridgeOutage(EdgeId edge)
    : std::runtime_error(fmt::format("outage of edge {} splits the network; LODF undefined", edge)),
      edge_(edge) {}

DcPowerFlow::DcPowerFlow(const ContingencyView& view, VertexId slack)
    : DcPowerFlow(view, slack, {}) {}

DcPowerFlow::DcPowerFlow(const ContingencyView& view, VertexId slack,
                         std::span<const VertexId> members)
    : view_(view), slack_(slack) {
  const auto& g = view_.base();
  const auto n = g.vertex_count();
  if (slack >= n) throw GraphError(GraphErrc::VertexOutOfRange, "slack vertex out of range");

  member_.assign(n, members.empty() ? 1 : 0);
  for (auto v : members) member_.at(v) = 1;
  member_[slack] = 1;

  // Every member must be reachable from the slack, or B' is structurally singular.
  std::vector<char> reached(n, 0);
  std::vector<VertexId> queue{slack};
  reached[slack] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    view_.for_each_neighbor(queue[head], [&](const Adjacent& a) {
      if (member_[a.neighbor] && !reached[a.neighbor]) {
        reached[a.neighbor] = 1;
        queue.push_back(a.neighbor);
      }
    });
  }
  reduced_.assign(n, -1);
  std::ptrdiff_t dim = 0;
  bool connected = true;
  for (VertexId v = 0; v < n; ++v) {
    if (!member_[v]) continue;
    if (!reached[v]) connected = false;
    if (v != slack) reduced_[v] = dim++;
  }
  factor_ = std::make_unique<Factor>();
  if (!connected) return;
  if (dim == 0) {
    ok_ = true;
    return;
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(4 * g.edge_count());
  for (const auto& e : g.edges()) {
    if (view_.is_removed(e.id) || !member_[e.u] || !member_[e.v]) continue;
    const double b = 1.0 / e.reactance;
    const auto ru = reduced_[e.u];
    const auto rv = reduced_[e.v];
    if (ru >= 0) triplets.emplace_back(ru, ru, b);
    if (rv >= 0) triplets.emplace_back(rv, rv, b);
    if (ru >= 0 && rv >= 0) {
      triplets.emplace_back(ru, rv, -b);
      triplets.emplace_back(rv, ru, -b);
    }
  }
  Eigen::SparseMatrix<double> bprime(dim, dim);
  bprime.setFromTriplets(triplets.begin(), triplets.end());
  factor_->ldlt.compute(bprime);
  if (factor_->ldlt.info() != Eigen::Success) return;
  ok_ = factor_->ldlt.vectorD().cwiseAbs().minCoeff() >= kSingularPivot;
}

DcPowerFlow::~DcPowerFlow() = default;
DcPowerFlow::DcPowerFlow(DcPowerFlow&&) noexcept = default;
DcPowerFlow& DcPowerFlow::operator=(DcPowerFlow&&) noexcept = default;

bool DcPowerFlow::ok() const noexcept { return ok_; }

std::vector<double> DcPowerFlow::angles_for(std::span<const double> reduced_rhs) const {
  const auto n = view_.base().vertex_count();
  std::vector<double> theta(n, 0.0);
  if (reduced_rhs.empty()) return theta;
  Eigen::Map<const Eigen::VectorXd> rhs(reduced_rhs.data(),
                                        static_cast<Eigen::Index>(reduced_rhs.size()));
  Eigen::VectorXd x = factor_->ldlt.solve(rhs);
  for (VertexId v = 0; v < n; ++v) {
    if (reduced_[v] >= 0) theta[v] = x[reduced_[v]];
  }
  return theta;
}

DcSolution DcPowerFlow::solve() const {
  const auto& g = view_.base();
  DcSolution sol;
  sol.slack = slack_;
  sol.island_id.resize(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) sol.island_id[v] = member_[v] ? 0 : 1;
  if (!ok_) return sol;

  const auto dim = static_cast<std::size_t>(
      std::count_if(reduced_.begin(), reduced_.end(), [](auto r) { return r >= 0; }));
  std::vector<double> p(dim, 0.0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (reduced_[v] < 0) continue;
    const auto& a = g.vertex(v);
    p[static_cast<std::size_t>(reduced_[v])] = (a.gen_mw - a.load_mw) / g.base_mva();
  }
  sol.angles = angles_for(p);
  sol.flows_mw.assign(g.edge_count(), 0.0);
  for (const auto& e : g.edges()) {
    if (view_.is_removed(e.id) || !member_[e.u] || !member_[e.v]) continue;
    const double f = (sol.angles[e.u] - sol.angles[e.v]) / e.reactance * g.base_mva();
    sol.flows_mw[e.id] = f;
    if (e.u == slack_) sol.slack_injection_mw += f;
    if (e.v == slack_) sol.slack_injection_mw -= f;
  }
  sol.converged = true;
  return sol;
}

std::vector<double> DcPowerFlow::ptdf_column(EdgeId k) const {
  const auto& g = view_.base();
  const auto& ek = g.edge(k);
  if (!ok_ || view_.is_removed(k) || !member_[ek.u] || !member_[ek.v]) {
    throw GraphError(GraphErrc::UnknownEdge,
                     fmt::format("edge {} is not part of the factorised network", k));
  }
  std::vector<double> rhs(
      static_cast<std::size_t>(std::count_if(reduced_.begin(), reduced_.end(),
                                             [](auto r) { return r >= 0; })),
      0.0);
  if (reduced_[ek.u] >= 0) rhs[static_cast<std::size_t>(reduced_[ek.u])] += 1.0;
  if (reduced_[ek.v] >= 0) rhs[static_cast<std::size_t>(reduced_[ek.v])] -= 1.0;
  auto theta = angles_for(rhs);
  std::vector<double> ptdf(g.edge_count(), 0.0);
  for (const auto& e : g.edges()) {
    if (view_.is_removed(e.id) || !member_[e.u] || !member_[e.v]) continue;
    ptdf[e.id] = (theta[e.u] - theta[e.v]) / e.reactance;
  }
  return ptdf;
}

DcSolution solve_base(const BaseGraph& graph, VertexId slack) {
  return DcPowerFlow(derive_view(graph), slack).solve();
}

std::vector<double> compute_lodf(const DcPowerFlow& flow, EdgeId k) {
  auto factors = flow.ptdf_column(k);
  const double self = factors[k];
  if (std::abs(1.0 - self) < kBridgeTolerance) throw BridgeOutage(k);
  const double scale = 1.0 / (1.0 - self);
  for (auto& f : factors) f *= scale;
  factors[k] = -1.0;
  return factors;
}

DcSolution superpose(const DcSolution& base, std::span<const double> factors, EdgeId k) {
  DcSolution out = base;
  if (!base.converged) return out;
  const double fk = base.flows_mw.at(k);
  for (std::size_t l = 0; l < out.flows_mw.size(); ++l) out.flows_mw[l] += factors[l] * fk;
  out.flows_mw[k] = 0.0;
  return out;
}

double ShedAccounting::gen_shed_mw() const noexcept {
  double s = 0.0;
  for (const auto& i : islands) s += i.gen_mw;
  return s;
}

double ShedAccounting::load_shed_mw() const noexcept {
  double s = 0.0;
  for (const auto& i : islands) s += i.load_mw;
  return s;
}

IslandSolution island_resolve(const ContingencyView& view,
                              std::span<const std::vector<VertexId>> islands) {
  const auto& g = view.base();
  std::vector<int> island_of(g.vertex_count(), 0);
  IslandSolution out;
  for (std::size_t k = 0; k < islands.size(); ++k) {
    for (auto v : islands[k]) island_of.at(v) = static_cast<int>(k) + 1;
    out.shed.islands.push_back(classify_island(islands[k], g));
  }

  std::vector<VertexId> mainland;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (island_of[v] == 0) mainland.push_back(v);
  }

  VertexId slack = g.slack_vertex();
  if (island_of[slack] != 0) {
    out.temporary_slack = true;
    if (mainland.empty()) {
      out.solution.island_id = island_of;
      return out;
    }
    slack = *std::max_element(mainland.begin(), mainland.end(), [&](VertexId a, VertexId b) {
      return g.vertex(a).gen_mw < g.vertex(b).gen_mw;
    });
  }

  out.solution = DcPowerFlow(view, slack, mainland).solve();
  out.solution.island_id = island_of;
  return out;
}

double kcl_residual(const ContingencyView& view, const DcSolution& solution) {
  const auto& g = view.base();
  if (!solution.converged) return 0.0;
  std::vector<double> net(g.vertex_count(), 0.0);
  for (const auto& e : g.edges()) {
    if (view.is_removed(e.id)) continue;
    if (solution.island_id[e.u] != 0 || solution.island_id[e.v] != 0) continue;
    net[e.u] += solution.flows_mw[e.id];
    net[e.v] -= solution.flows_mw[e.id];
  }
  double worst = 0.0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (v == solution.slack || solution.island_id[v] != 0) continue;
    const auto& a = g.vertex(v);
    const double injection = (a.gen_mw - a.load_mw) / g.base_mva();
    worst = std::max(worst, std::abs(net[v] / g.base_mva() - injection));
  }
  return worst;
}

}  // namespace gridscreen
