#include <nlohmann/json.hpp>

#include "gridscreen/network.hpp"
#include "ingest_detail.hpp"

namespace gridscreen {
namespace {

using nlohmann::json;

// Field accessor that reports schema violations with a path like "buses/3/id".
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

  Node at(const std::string& key) const {
    auto child = path_.empty() ? key : path_ + "/" + key;
    if (!j_.is_object()) throw IngestError::at_path(path_, "expected object");
    auto it = j_.find(key);
    if (it == j_.end()) throw IngestError::at_path(child, "required field missing");
    return Node(*it, child);
  }

  std::optional<Node> find(const std::string& key) const {
    if (!j_.is_object()) throw IngestError::at_path(path_, "expected object");
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return std::nullopt;
    return Node(*it, path_.empty() ? key : path_ + "/" + key);
  }

  double number() const {
    if (!j_.is_number()) throw IngestError::at_path(path_, "expected number");
    return j_.get<double>();
  }

  int integer() const {
    if (!j_.is_number_integer()) throw IngestError::at_path(path_, "expected integer");
    return j_.get<int>();
  }

  std::string string() const {
    if (!j_.is_string()) throw IngestError::at_path(path_, "expected string");
    return j_.get<std::string>();
  }

  std::vector<Node> array() const {
    if (!j_.is_array()) throw IngestError::at_path(path_, "expected array");
    std::vector<Node> out;
    out.reserve(j_.size());
    for (std::size_t i = 0; i < j_.size(); ++i) out.emplace_back(j_[i], path_ + "/" + std::to_string(i));
    return out;
  }

 private:
  const json& j_;
  std::string path_;
};

double number_or(const Node& n, const std::string& key, double fallback) {
  auto child = n.find(key);
  return child ? child->number() : fallback;
}

int integer_or(const Node& n, const std::string& key, int fallback) {
  auto child = n.find(key);
  return child ? child->integer() : fallback;
}

BusType bus_type_from(const Node& n) {
  auto s = n.string();
  if (s == "PQ") return BusType::PQ;
  if (s == "PV") return BusType::PV;
  if (s == "Slack") return BusType::Slack;
  throw IngestError::at_path(n.path(), "bus type must be PQ, PV or Slack");
}

BranchStatus status_from(const Node& n) {
  auto s = n.string();
  if (s == "InService") return BranchStatus::InService;
  if (s == "OutOfService") return BranchStatus::OutOfService;
  throw IngestError::at_path(n.path(), "status must be InService or OutOfService");
}

BusRecord read_bus(const Node& n) {
  BusRecord b;
  b.id = n.at("id").integer();
  if (auto name = n.find("name")) b.name = name->string();
  b.bus_type = bus_type_from(n.at("type"));
  b.voltage_mag = number_or(n, "v", 1.0);
  b.voltage_ang = number_or(n, "angle", 0.0);
  b.load_mw = n.at("load_mw").number();
  b.gen_mw = n.at("gen_mw").number();
  if (auto v = n.find("v_min")) b.v_min = v->number();
  if (auto v = n.find("v_max")) b.v_max = v->number();
  b.area = integer_or(n, "area", 0);
  b.zone = integer_or(n, "zone", 0);
  b.load_mvar = number_or(n, "load_mvar", 0.0);
  b.gen_mvar = number_or(n, "gen_mvar", 0.0);
  b.base_kv = number_or(n, "base_kv", 0.0);
  b.desired_v = number_or(n, "desired_v", 0.0);
  b.q_max = number_or(n, "q_max", 0.0);
  b.q_min = number_or(n, "q_min", 0.0);
  b.shunt_g = number_or(n, "shunt_g", 0.0);
  b.shunt_b = number_or(n, "shunt_b", 0.0);
  b.remote_bus = integer_or(n, "remote_bus", 0);
  return b;
}

BranchRecord read_branch(const Node& n) {
  BranchRecord br;
  br.from_bus = n.at("from").integer();
  br.to_bus = n.at("to").integer();
  br.circuit_id = integer_or(n, "ckt", 1);
  br.reactance_x = n.at("x").number();
  br.rating_mva = number_or(n, "rating_mva", 0.0);
  if (auto s = n.find("status")) br.status = status_from(*s);
  br.tap_ratio = number_or(n, "tap", 0.0);
  br.area = integer_or(n, "area", 0);
  br.zone = integer_or(n, "zone", 0);
  br.branch_type = integer_or(n, "branch_type", 0);
  br.resistance_r = number_or(n, "r", 0.0);
  br.charging_b = number_or(n, "b", 0.0);
  br.rating2_mva = number_or(n, "rating2_mva", 0.0);
  br.rating3_mva = number_or(n, "rating3_mva", 0.0);
  br.phase_shift_deg = number_or(n, "phase_shift_deg", 0.0);
  return br;
}

}  // namespace

PowerNetwork parse_native_json(std::string_view text) {
  json doc = json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded()) throw IngestError::at_path("", "document is not valid JSON");
  Node root(doc, "");

  PowerNetwork net;
  if (auto title = root.find("title")) net.title = title->string();
  net.base_mva = root.at("base_mva").number();
  auto buses = root.at("buses").array();
  if (buses.empty()) throw IngestError::at_path("buses", "bus list is empty");
  for (const auto& b : buses) net.buses.push_back(read_bus(b));
  for (const auto& br : root.at("branches").array()) net.branches.push_back(read_branch(br));

  detail::check_references(net);
  return net;
}

std::string emit_native_json(const PowerNetwork& network, int indent) {
  json doc;
  doc["title"] = network.title;
  doc["base_mva"] = network.base_mva;
  auto& buses = doc["buses"] = json::array();
  for (const auto& b : network.buses) {
    json j{{"id", b.id},
           {"name", b.name},
           {"type", to_string(b.bus_type)},
           {"v", b.voltage_mag},
           {"angle", b.voltage_ang},
           {"load_mw", b.load_mw},
           {"gen_mw", b.gen_mw},
           {"area", b.area},
           {"zone", b.zone},
           {"load_mvar", b.load_mvar},
           {"gen_mvar", b.gen_mvar},
           {"base_kv", b.base_kv},
           {"desired_v", b.desired_v},
           {"q_max", b.q_max},
           {"q_min", b.q_min},
           {"shunt_g", b.shunt_g},
           {"shunt_b", b.shunt_b},
           {"remote_bus", b.remote_bus}};
    if (b.v_min) j["v_min"] = *b.v_min;
    if (b.v_max) j["v_max"] = *b.v_max;
    buses.push_back(std::move(j));
  }
  auto& branches = doc["branches"] = json::array();
  for (const auto& br : network.branches) {
    branches.push_back(json{{"from", br.from_bus},
                            {"to", br.to_bus},
                            {"ckt", br.circuit_id},
                            {"x", br.reactance_x},
                            {"rating_mva", br.rating_mva},
                            {"status", to_string(br.status)},
                            {"tap", br.tap_ratio},
                            {"area", br.area},
                            {"zone", br.zone},
                            {"branch_type", br.branch_type},
                            {"r", br.resistance_r},
                            {"b", br.charging_b},
                            {"rating2_mva", br.rating2_mva},
                            {"rating3_mva", br.rating3_mva},
                            {"phase_shift_deg", br.phase_shift_deg}});
  }
  return doc.dump(indent);
}

}  // namespace gridscreen
