#include "gridscreen/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "ingest_detail.hpp"

namespace gridscreen {

std::string_view to_string(BusType type) {
  switch (type) {
    case BusType::PQ: return "PQ";
    case BusType::PV: return "PV";
    case BusType::Slack: return "Slack";
  }
  return "PQ";
}

std::string_view to_string(BranchStatus status) {
  return status == BranchStatus::InService ? "InService" : "OutOfService";
}

std::string_view to_string(IngestErrc code) {
  switch (code) {
    case IngestErrc::MissingSectionTerminator: return "MissingSectionTerminator";
    case IngestErrc::MalformedCard: return "MalformedCard";
    case IngestErrc::DanglingBranch: return "DanglingBranch";
    case IngestErrc::DuplicateBus: return "DuplicateBus";
    case IngestErrc::SchemaViolation: return "SchemaViolation";
    case IngestErrc::ZeroReactance: return "ZeroReactance";
    case IngestErrc::NoSlackBus: return "NoSlackBus";
    case IngestErrc::DuplicateBranchKey: return "DuplicateBranchKey";
    case IngestErrc::InvalidValue: return "InvalidValue";
    case IngestErrc::Io: return "Io";
  }
  return "Unknown";
}

IngestError::IngestError(IngestErrc code, std::string message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

IngestError IngestError::at_line(IngestErrc code, int line, std::string message) {
  IngestError e(code, "line " + std::to_string(line) + ": " + message);
  e.line_ = line;
  return e;
}

IngestError IngestError::for_bus(IngestErrc code, int bus, std::string message) {
  IngestError e(code, message);
  e.bus_ = bus;
  return e;
}

IngestError IngestError::for_branch(IngestErrc code, std::size_t branch, std::string message) {
  IngestError e(code, "branch #" + std::to_string(branch) + ": " + message);
  e.branch_ = branch;
  return e;
}

IngestError IngestError::at_path(std::string path, std::string message) {
  IngestError e(IngestErrc::SchemaViolation, path + ": " + message);
  e.path_ = std::move(path);
  return e;
}

namespace detail {

void check_references(const PowerNetwork& network) {
  std::unordered_set<int> ids;
  ids.reserve(network.buses.size());
  for (const auto& bus : network.buses) {
    if (!ids.insert(bus.id).second) {
      throw IngestError::for_bus(IngestErrc::DuplicateBus, bus.id,
                                 "bus " + std::to_string(bus.id) + " defined twice");
    }
  }
  for (const auto& br : network.branches) {
    for (int end : {br.from_bus, br.to_bus}) {
      if (!ids.contains(end)) {
        throw IngestError::for_bus(IngestErrc::DanglingBranch, end,
                                   "branch references undefined bus " + std::to_string(end));
      }
    }
  }
}

}  // namespace detail

InputFormat detect_format(std::string_view text) {
  auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string_view::npos && text[pos] == '{') return InputFormat::Json;
  return InputFormat::Cdf;
}

PowerNetwork parse_network(std::string_view text, InputFormat format) {
  if (format == InputFormat::Auto) format = detect_format(text);
  return format == InputFormat::Json ? parse_native_json(text) : parse_cdf(text);
}

PowerNetwork load_network(const std::filesystem::path& path, InputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IngestError(IngestErrc::Io, "cannot open input file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str(), format);
}

std::optional<std::size_t> ValidatedNetwork::find_index(int bus_id) const {
  auto it = index_.find(bus_id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ValidatedNetwork::index_of(int bus_id) const {
  auto idx = find_index(bus_id);
  if (!idx) throw std::out_of_range("unknown bus " + std::to_string(bus_id));
  return *idx;
}

ValidatedNetwork validate(PowerNetwork network) {
  if (!(network.base_mva > 0.0) || !std::isfinite(network.base_mva)) {
    throw IngestError(IngestErrc::InvalidValue, "base_mva must be positive");
  }
  if (network.buses.empty()) {
    throw IngestError(IngestErrc::InvalidValue, "network has no buses");
  }
  detail::check_references(network);

  std::optional<std::size_t> slack;
  for (std::size_t i = 0; i < network.buses.size(); ++i) {
    const auto& bus = network.buses[i];
    if (bus.v_min && bus.v_max && *bus.v_min > *bus.v_max) {
      throw IngestError::for_bus(IngestErrc::InvalidValue, bus.id,
                                 "bus " + std::to_string(bus.id) + " has v_min > v_max");
    }
    if (bus.load_mw < 0.0) {
      throw IngestError::for_bus(IngestErrc::InvalidValue, bus.id,
                                 "bus " + std::to_string(bus.id) + " has negative load");
    }
    if (bus.bus_type == BusType::Slack && !slack) slack = i;
  }
  if (!slack) throw IngestError(IngestErrc::NoSlackBus, "no bus is typed Slack");

  std::set<std::tuple<int, int, int>> keys;
  for (std::size_t k = 0; k < network.branches.size(); ++k) {
    const auto& br = network.branches[k];
    if (br.from_bus == br.to_bus) {
      throw IngestError::for_branch(IngestErrc::InvalidValue, k,
                                    "self-loop on bus " + std::to_string(br.from_bus));
    }
    if (br.reactance_x == 0.0 || !std::isfinite(br.reactance_x)) {
      throw IngestError::for_branch(IngestErrc::ZeroReactance, k,
                                    std::to_string(br.from_bus) + "-" + std::to_string(br.to_bus) +
                                        " has zero reactance");
    }
    if (br.rating_mva < 0.0) {
      throw IngestError::for_branch(IngestErrc::InvalidValue, k, "negative rating");
    }
    auto key = std::make_tuple(std::min(br.from_bus, br.to_bus), std::max(br.from_bus, br.to_bus),
                               br.circuit_id);
    if (!keys.insert(key).second) {
      throw IngestError::for_branch(IngestErrc::DuplicateBranchKey, k,
                                    std::to_string(br.from_bus) + "-" + std::to_string(br.to_bus) +
                                        " circuit " + std::to_string(br.circuit_id) +
                                        " listed twice");
    }
  }

  ValidatedNetwork out;
  out.index_.reserve(network.buses.size());
  for (std::size_t i = 0; i < network.buses.size(); ++i) out.index_.emplace(network.buses[i].id, i);
  out.slack_index_ = *slack;
  out.network_ = std::move(network);
  return out;
}

}  // namespace gridscreen
