#include "explorer.hpp"

#include <chrono>
#include <charconv>

#include <fmt/format.h>
#include <httplib.h>

#include "gridscreen/report.hpp"

namespace gridscreen::tools {

using nlohmann::json;

namespace {

ApiResponse error(int status, std::string code, std::string message = {}) {
  json body{{"error", std::move(code)}};
  if (!message.empty()) body["message"] = std::move(message);
  return {status, std::move(body)};
}

ApiResponse no_network() { return error(409, "no_network"); }

std::string_view type_name(BusType t) {
  switch (t) {
    case BusType::PQ: return "PQ";
    case BusType::PV: return "PV";
    case BusType::Slack: return "Slack";
  }
  return "PQ";
}

json key_json(const BranchKey& k) { return json{{"from", k.from}, {"to", k.to}, {"ckt", k.ckt}}; }

json island_json(const IslandReport& island, double base_mva) {
  return json{{"buses", island.bus_ids},
              {"class", to_string(island.island_class)},
              {"gen_count", island.gen_count},
              {"load_count", island.load_count},
              {"gen_mw", island.gen_mw},
              {"load_mw", island.load_mw},
              {"gen_pu", island.gen_mw / base_mva},
              {"load_pu", island.load_mw / base_mva}};
}

int int_field(const json& j, const char* name) {
  if (!j.contains(name) || !j[name].is_number_integer()) {
    throw std::invalid_argument(fmt::format("edge field '{}' must be an integer", name));
  }
  return j[name].get<int>();
}

}  // namespace

ExplorerSession::ExplorerSession(ValidatedNetwork network, SeverityWeights weights,
                                 unsigned parallelism)
    : ctx_(std::make_shared<const ScreeningContext>(std::move(network))),
      parallelism_(parallelism) {
  check_weights(weights);
  scored_.weights = weights;
}

std::shared_ptr<const std::vector<ScenarioOutcome>> ExplorerSession::outcomes() {
  std::lock_guard lock(sweep_mu_);
  if (!outcomes_) {
    auto start = std::chrono::steady_clock::now();
    auto ids = ctx_->all_contingencies();
    outcomes_ = std::make_shared<const std::vector<ScenarioOutcome>>(
        evaluate_all(*ctx_, ids, parallelism_));
    sweep_wall_ms_ =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return outcomes_;
}

ApiResponse ExplorerSession::get_network() const {
  if (!loaded()) return no_network();
  const auto& net = ctx_->network().network();
  const auto& graph = ctx_->graph();
  json buses = json::array();
  for (const auto& b : net.buses) {
    buses.push_back({{"id", b.id},
                     {"name", b.name},
                     {"type", type_name(b.bus_type)},
                     {"gen_mw", b.gen_mw},
                     {"load_mw", b.load_mw}});
  }
  // Out-of-service branches have no edge id.
  std::vector<json> edge_ids(net.branches.size(), nullptr);
  for (const auto& e : graph.edges()) edge_ids[e.branch_index] = e.id;
  json branches = json::array();
  for (std::size_t k = 0; k < net.branches.size(); ++k) {
    const auto& br = net.branches[k];
    branches.push_back({{"edge_id", edge_ids[k]},
                        {"from", br.from_bus},
                        {"to", br.to_bus},
                        {"ckt", br.circuit_id},
                        {"x", br.reactance_x},
                        {"rating", br.rating_mva},
                        {"status", br.status == BranchStatus::InService ? "InService" : "OutOfService"}});
  }
  return {200, json{{"title", net.title},
                    {"base_mva", net.base_mva},
                    {"slack_bus", graph.vertex(graph.slack_vertex()).bus_id},
                    {"buses", std::move(buses)},
                    {"branches", std::move(branches)}}};
}

ApiResponse ExplorerSession::post_whatif(const json& request) const {
  if (!loaded()) return no_network();
  if (!request.is_object() || !request.contains("edges") || !request["edges"].is_array()) {
    return error(400, "bad_request", "expected {\"edges\": [{\"from\", \"to\", \"ckt\"}]}");
  }
  const auto& edges = request["edges"];
  if (edges.size() != 1) {
    return error(400, "n_minus_k_unsupported",
                 fmt::format("exactly one edge per request, got {}", edges.size()));
  }
  const auto& graph = ctx_->graph();
  EdgeId id = 0;
  try {
    const auto& e = edges[0];
    if (!e.is_object()) throw std::invalid_argument("edge must be an object");
    std::optional<int> ckt;
    if (e.contains("ckt") && !e["ckt"].is_null()) ckt = int_field(e, "ckt");
    id = graph.resolve(int_field(e, "from"), int_field(e, "to"), ckt);
  } catch (const GraphError& e) {
    return error(400, e.code() == GraphErrc::AmbiguousBranch ? "ambiguous_edge" : "unknown_edge",
                 e.what());
  } catch (const std::invalid_argument& e) {
    return error(400, "bad_request", e.what());
  }

  SeverityWeights weights;
  {
    std::lock_guard lock(state_mu_);
    weights = scored_.weights;
  }
  BfsWorkspace ws;
  auto outcome = evaluate_scenario(*ctx_, id, ws);
  auto rec = score_scenario(*ctx_, outcome, weights);

  json flows = json::array();
  const auto& sol = outcome.solution;
  for (const auto& e : graph.edges()) {
    if (e.id == id) continue;
    const double mw = sol.converged ? sol.flows_mw[e.id] : 0.0;
    flows.push_back({{"edge", key_json(e.key)},
                     {"edge_id", e.id},
                     {"mw", mw},
                     {"limit", e.rating_mva},
                     {"violated", e.rating_mva > 0.0 && std::abs(mw) > e.rating_mva}});
  }

  auto rec_json = record_to_json(rec);
  json body{{"contingency", id},
            {"edge", key_json(rec.edge)},
            {"connectivity", outcome.connectivity.status == Connectivity::Split ? "split" : "connected"},
            {"si", rec.si},
            {"breakdown", rec_json["breakdown"]},
            {"diverged", rec.diverged},
            {"temporary_slack", outcome.temporary_slack},
            {"flows", std::move(flows)}};
  if (!rec.islands.empty()) body["island"] = island_json(rec.islands.front(), graph.base_mva());
  return {200, std::move(body)};
}

ApiResponse ExplorerSession::get_screening(std::optional<std::size_t> top) {
  if (!loaded()) return no_network();
  auto outs = outcomes();

  std::shared_ptr<const ScreeningReport> report;
  SeverityWeights weights;
  {
    std::lock_guard lock(state_mu_);
    report = scored_.report;
    weights = scored_.weights;
  }
  if (!report) {
    auto fresh = build_report(*ctx_, *outs, weights);
    fresh.timings.graph_init_ms = ctx_->init_ms();
    {
      std::lock_guard lock(sweep_mu_);
      fresh.timings.wall_ms = sweep_wall_ms_;
    }
    auto made = std::make_shared<const ScreeningReport>(std::move(fresh));
    std::lock_guard lock(state_mu_);
    // Only publish if the weights did not move while we were scoring.
    if (scored_.weights == weights && !scored_.report) scored_.report = made;
    report = made;
  }

  auto body = report_to_json(*report);
  if (top && body["records"].size() > *top) {
    auto& records = body["records"];
    records.erase(records.begin() + static_cast<std::ptrdiff_t>(*top), records.end());
  }
  return {200, std::move(body)};
}

ApiResponse ExplorerSession::put_weights(const json& request) {
  SeverityWeights w;
  try {
    w = weights_from_json(request);
  } catch (const std::exception& e) {
    return error(400, "invalid_weights", e.what());
  }
  std::lock_guard lock(state_mu_);
  scored_ = Scored{w, nullptr};
  return {200, weights_to_json(w)};
}

void mount_routes(httplib::Server& server, ExplorerSession& session) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});

  auto send = [](httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  auto parse_body = [](const httplib::Request& req, json& out) {
    out = json::parse(req.body, nullptr, false);
    return !out.is_discarded();
  };

  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  server.Get("/api/network", [&session, send](const httplib::Request&, httplib::Response& res) {
    send(res, session.get_network());
  });
  server.Post("/api/whatif",
              [&session, send, parse_body](const httplib::Request& req, httplib::Response& res) {
                json body;
                if (!parse_body(req, body)) return send(res, error(400, "bad_request", "body is not JSON"));
                send(res, session.post_whatif(body));
              });
  server.Get("/api/screening", [&session, send](const httplib::Request& req, httplib::Response& res) {
    std::optional<std::size_t> top;
    if (req.has_param("top")) {
      auto s = req.get_param_value("top");
      std::size_t n = 0;
      auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
      if (ec != std::errc{} || end != s.data() + s.size() || n == 0) {
        return send(res, error(400, "bad_request", "top must be a positive integer"));
      }
      top = n;
    }
    send(res, session.get_screening(top));
  });
  server.Put("/api/weights",
             [&session, send, parse_body](const httplib::Request& req, httplib::Response& res) {
               json body;
               if (!parse_body(req, body)) return send(res, error(400, "bad_request", "body is not JSON"));
               send(res, session.put_weights(body));
             });
}

}  // namespace gridscreen::tools
