#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gridscreen/screening.hpp"

namespace httplib {
class Server;
}

namespace gridscreen::tools {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

/// One loaded network plus the caches behind the explorer endpoints. The
/// context is immutable; scenario outcomes are computed once and kept across
/// weight changes, so only scoring re-runs when the weights move.
class ExplorerSession {
 public:
  ExplorerSession() = default;
  explicit ExplorerSession(ValidatedNetwork network, SeverityWeights weights = {},
                           unsigned parallelism = 1);

  bool loaded() const noexcept { return ctx_ != nullptr; }

  ApiResponse get_network() const;
  ApiResponse post_whatif(const nlohmann::json& request) const;
  ApiResponse get_screening(std::optional<std::size_t> top = std::nullopt);
  ApiResponse put_weights(const nlohmann::json& request);

 private:
  struct Scored {
    SeverityWeights weights;
    std::shared_ptr<const ScreeningReport> report;
  };

  std::shared_ptr<const std::vector<ScenarioOutcome>> outcomes();

  std::shared_ptr<const ScreeningContext> ctx_;
  unsigned parallelism_ = 1;

  std::mutex sweep_mu_;  // serialises the one-time sweep
  std::shared_ptr<const std::vector<ScenarioOutcome>> outcomes_;
  double sweep_wall_ms_ = 0.0;

  mutable std::mutex state_mu_;  // guards scored_
  Scored scored_;
};

/// Registers the /api routes (with CORS headers) on `server`.
void mount_routes(httplib::Server& server, ExplorerSession& session);

}  // namespace gridscreen::tools
