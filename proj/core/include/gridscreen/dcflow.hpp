#pragma once

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gridscreen/graph.hpp"
#include "gridscreen/topology.hpp"

namespace gridscreen {

/// Pivot magnitude below which the reduced susceptance matrix is treated as singular.
inline constexpr double kSingularPivot = 1e-10;

/// Threshold on |1 - PTDF(k,k)| that marks an outage as a bridge.
inline constexpr double kBridgeTolerance = 1e-9;

/// DC power flow result. `flows_mw` is indexed by EdgeId and signed
/// from->to. Buses outside the solved component keep angle 0 and a nonzero
/// `island_id`; branches touching them carry no flow. A diverged solution has
/// `converged == false` and empty flows.
struct DcSolution {
  std::vector<double> angles;
  std::vector<double> flows_mw;
  double slack_injection_mw = 0.0;
  bool converged = false;
  std::vector<int> island_id;
  VertexId slack = 0;
};

class BridgeOutage : public std::runtime_error {
 public:
  explicit BridgeOutage(EdgeId edge);
  EdgeId edge() const noexcept { return edge_; }

 private:
  EdgeId edge_;
};

/// Factorised reduced B' matrix for one connected set of buses in a view.
/// Build it once per base case and share it read-only across workers; every
/// LODF column and re-solve reuses the same LDL^T factors.
class DcPowerFlow {
 public:
  /// Factorises B' over every vertex of the view.
  DcPowerFlow(const ContingencyView& view, VertexId slack);
  /// Factorises B' over `members` only (which must contain `slack`).
  DcPowerFlow(const ContingencyView& view, VertexId slack, std::span<const VertexId> members);
  ~DcPowerFlow();
  DcPowerFlow(DcPowerFlow&&) noexcept;
  DcPowerFlow& operator=(DcPowerFlow&&) noexcept;

  /// False when the member set is not connected from the slack or a pivot
  /// fell below kSingularPivot.
  bool ok() const noexcept;
  VertexId slack() const noexcept { return slack_; }
  const BaseGraph& graph() const noexcept { return view_.base(); }
  const ContingencyView& view() const noexcept { return view_; }

  /// Solves with injections (gen - load) / base_mva taken from the graph.
  DcSolution solve() const;

  /// PTDF(l, k) for every edge l: flow change on l (pu) per 1 pu injected at
  /// k's from-bus and withdrawn at its to-bus.
  std::vector<double> ptdf_column(EdgeId k) const;

 private:
  struct Factor;
  ContingencyView view_;
  VertexId slack_;
  std::vector<char> member_;
  std::vector<std::ptrdiff_t> reduced_;  // vertex -> row in B', -1 for slack/non-members
  std::unique_ptr<Factor> factor_;
  bool ok_ = false;

  std::vector<double> angles_for(std::span<const double> reduced_rhs) const;
};

DcSolution solve_base(const BaseGraph& graph, VertexId slack);

/// LODF column for outage k: post-outage flow f'_l = f_l + L(l,k) f_k, with
/// L(k,k) = -1. Throws BridgeOutage when PTDF(k,k) is 1 within kBridgeTolerance.
std::vector<double> compute_lodf(const DcPowerFlow& flow, EdgeId k);

/// Applies an LODF column to a base solution. Angles are carried over unchanged.
DcSolution superpose(const DcSolution& base, std::span<const double> factors, EdgeId k);

/// Power cut off from the mainland: one IslandReport per detached island.
struct ShedAccounting {
  std::vector<IslandReport> islands;
  bool split() const noexcept { return !islands.empty(); }
  double gen_shed_mw() const noexcept;
  double load_shed_mw() const noexcept;
};

struct IslandSolution {
  DcSolution solution;
  ShedAccounting shed;
  /// Set when the original slack sat in a detached island and the mainland
  /// was solved with its largest generator as reference instead.
  bool temporary_slack = false;
};

/// Re-solves the mainland (every vertex not in `islands`) of a split view and
/// books each detached island's gen and load MW as shed.
IslandSolution island_resolve(const ContingencyView& view,
                              std::span<const std::vector<VertexId>> islands);

/// Largest |sum of incident flows - net injection| in per-unit over solved
/// non-slack buses, counting only edges live in `view`.
double kcl_residual(const ContingencyView& view, const DcSolution& solution);

}  // namespace gridscreen
