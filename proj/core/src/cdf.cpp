#include <algorithm>
#include <charconv>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridscreen/network.hpp"
#include "ingest_detail.hpp"

namespace gridscreen {
namespace {

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
  }
  return true;
}

bool is_terminator(std::string_view line) { return trim(line).starts_with("-99"); }

// A card plus its 1-based line number, read by 1-based inclusive column ranges.
class Card {
 public:
  Card(std::string_view text, int line) : text_(text), line_(line) {}

  int line() const { return line_; }

  std::string_view raw(int first, int last) const {
    auto begin = static_cast<std::size_t>(first - 1);
    if (begin >= text_.size()) return {};
    auto len = static_cast<std::size_t>(last - first + 1);
    return text_.substr(begin, len);
  }

  std::string_view text(int first, int last) const { return trim(raw(first, last)); }

  std::optional<double> number(int first, int last, std::string_view what) const {
    auto s = text(first, last);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw IngestError::at_line(IngestErrc::MalformedCard, line_,
                                 "bad " + std::string(what) + " '" + std::string(s) + "'");
    }
    return v;
  }

  double required(int first, int last, std::string_view what) const {
    auto v = number(first, last, what);
    if (!v) {
      throw IngestError::at_line(IngestErrc::MalformedCard, line_,
                                 "missing " + std::string(what));
    }
    return *v;
  }

  double optional(int first, int last, std::string_view what) const {
    return number(first, last, what).value_or(0.0);
  }

  int integer(int first, int last, std::string_view what, bool must) const {
    auto v = must ? required(first, last, what) : optional(first, last, what);
    if (v != static_cast<double>(static_cast<long>(v))) {
      throw IngestError::at_line(IngestErrc::MalformedCard, line_,
                                 "non-integer " + std::string(what));
    }
    return static_cast<int>(v);
  }

 private:
  std::string_view text_;
  int line_;
};

BusRecord read_bus(const Card& c) {
  BusRecord b;
  b.id = c.integer(1, 4, "bus number", true);
  b.name = std::string(c.text(6, 17));
  b.area = c.integer(19, 20, "area", false);
  b.zone = c.integer(21, 23, "loss zone", false);
  switch (c.integer(25, 26, "bus type", true)) {
    case 0:
    case 1: b.bus_type = BusType::PQ; break;
    case 2: b.bus_type = BusType::PV; break;
    case 3: b.bus_type = BusType::Slack; break;
    default:
      throw IngestError::at_line(IngestErrc::MalformedCard, c.line(), "unknown bus type code");
  }
  b.voltage_mag = c.required(28, 33, "final voltage");
  b.voltage_ang = c.required(34, 40, "final angle");
  b.load_mw = c.required(41, 49, "load MW");
  b.load_mvar = c.optional(50, 59, "load MVAR");
  b.gen_mw = c.required(60, 67, "generation MW");
  b.gen_mvar = c.optional(68, 75, "generation MVAR");
  b.base_kv = c.optional(77, 83, "base kV");
  b.desired_v = c.optional(85, 90, "desired volts");
  b.q_max = c.optional(91, 98, "maximum limit");
  b.q_min = c.optional(99, 106, "minimum limit");
  b.shunt_g = c.optional(107, 114, "shunt G");
  b.shunt_b = c.optional(115, 122, "shunt B");
  b.remote_bus = c.integer(124, 127, "remote bus", false);
  return b;
}

BranchRecord read_branch(const Card& c) {
  BranchRecord br;
  br.from_bus = c.integer(1, 4, "tap bus number", true);
  br.to_bus = c.integer(6, 9, "Z bus number", true);
  br.area = c.integer(11, 12, "area", false);
  br.zone = c.integer(13, 14, "loss zone", false);
  br.circuit_id = c.text(17, 17).empty() ? 1 : c.integer(17, 17, "circuit", true);
  br.branch_type = c.integer(19, 19, "branch type", false);
  br.resistance_r = c.optional(20, 29, "resistance");
  br.reactance_x = c.required(30, 40, "reactance");
  br.charging_b = c.optional(41, 50, "line charging");
  br.rating_mva = c.optional(51, 55, "MVA rating 1");
  br.rating2_mva = c.optional(57, 61, "MVA rating 2");
  br.rating3_mva = c.optional(63, 67, "MVA rating 3");
  br.tap_ratio = c.optional(77, 82, "turns ratio");
  br.phase_shift_deg = c.optional(84, 90, "phase shift");
  br.status = BranchStatus::InService;
  return br;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto end = nl == std::string_view::npos ? text.size() : nl;
    auto line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

// Reads cards after the header at `header` until a -99x terminator.
template <typename Reader>
auto read_section(const std::vector<std::string_view>& lines, std::size_t header,
                  std::string_view name, Reader reader) {
  std::vector<decltype(reader(std::declval<Card>()))> out;
  for (std::size_t i = header + 1; i < lines.size(); ++i) {
    if (is_terminator(lines[i])) return std::make_pair(std::move(out), i);
    if (trim(lines[i]).empty()) continue;
    out.push_back(reader(Card(lines[i], static_cast<int>(i + 1))));
  }
  throw IngestError(IngestErrc::MissingSectionTerminator,
                    std::string(name) + " section is not terminated by -999");
}

std::optional<std::size_t> find_header(const std::vector<std::string_view>& lines,
                                       std::size_t from, std::string_view header) {
  for (std::size_t i = from; i < lines.size(); ++i) {
    if (starts_with_ci(trim(lines[i]), header)) return i;
  }
  return std::nullopt;
}

// Right-justified (or left-justified) value placed in a 1-based column range.
void put(std::string& card, int first, int last, std::string_view value, bool left = false) {
  auto width = static_cast<std::size_t>(last - first + 1);
  if (value.size() > width) {
    throw std::invalid_argument("value '" + std::string(value) + "' does not fit columns " +
                                std::to_string(first) + "-" + std::to_string(last));
  }
  if (card.size() < static_cast<std::size_t>(last)) card.resize(static_cast<std::size_t>(last), ' ');
  auto offset = left ? 0 : width - value.size();
  card.replace(static_cast<std::size_t>(first - 1) + offset, value.size(), value);
}

// Shortest round-trip text if it fits, otherwise fixed-point with fewer decimals.
std::string fit(double v, int first, int last) {
  auto width = static_cast<std::size_t>(last - first + 1);
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  if (s.size() <= width) return s;
  for (int decimals = 8; decimals >= 0; --decimals) {
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    if (std::string_view(buf).size() <= width) return buf;
  }
  throw std::invalid_argument("value " + s + " does not fit CDF columns");
}

}  // namespace

PowerNetwork parse_cdf(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.empty() || trim(lines.front()).empty()) {
    throw IngestError::at_line(IngestErrc::MalformedCard, 1, "missing title card");
  }
  PowerNetwork net;
  Card title(lines.front(), 1);
  net.base_mva = title.required(32, 37, "MVA base");
  net.title = std::string(trim(title.raw(46, 200)));

  auto bus_header = find_header(lines, 1, "BUS DATA FOLLOWS");
  if (!bus_header) {
    throw IngestError(IngestErrc::MissingSectionTerminator, "no BUS DATA FOLLOWS section");
  }
  auto [buses, bus_end] = read_section(lines, *bus_header, "BUS DATA", read_bus);
  net.buses = std::move(buses);

  auto branch_header = find_header(lines, bus_end + 1, "BRANCH DATA FOLLOWS");
  if (!branch_header) {
    throw IngestError(IngestErrc::MissingSectionTerminator, "no BRANCH DATA FOLLOWS section");
  }
  auto [branches, branch_end] = read_section(lines, *branch_header, "BRANCH DATA", read_branch);
  (void)branch_end;
  net.branches = std::move(branches);

  detail::check_references(net);
  return net;
}

std::string write_cdf(const PowerNetwork& network) {
  std::string out;
  std::string card;

  card.assign(1, ' ');
  put(card, 2, 9, "01/01/00");
  put(card, 11, 30, "GRIDSCREEN", true);
  put(card, 32, 37, fit(network.base_mva, 32, 37));
  put(card, 39, 42, "2000");
  put(card, 44, 44, "S");
  if (!network.title.empty()) {
    card.resize(45, ' ');
    card += network.title;
  }
  out += card + '\n';

  out += "BUS DATA FOLLOWS                            " + std::to_string(network.buses.size()) +
         " ITEMS\n";
  for (const auto& b : network.buses) {
    card.clear();
    put(card, 1, 4, std::to_string(b.id));
    put(card, 6, 17, b.name.substr(0, 12), true);
    put(card, 19, 20, std::to_string(b.area));
    put(card, 21, 23, std::to_string(b.zone));
    int code = b.bus_type == BusType::Slack ? 3 : b.bus_type == BusType::PV ? 2 : 0;
    put(card, 25, 26, std::to_string(code));
    put(card, 28, 33, fit(b.voltage_mag, 28, 33));
    put(card, 34, 40, fit(b.voltage_ang, 34, 40));
    put(card, 41, 49, fit(b.load_mw, 41, 49));
    put(card, 50, 59, fit(b.load_mvar, 50, 59));
    put(card, 60, 67, fit(b.gen_mw, 60, 67));
    put(card, 68, 75, fit(b.gen_mvar, 68, 75));
    put(card, 77, 83, fit(b.base_kv, 77, 83));
    put(card, 85, 90, fit(b.desired_v, 85, 90));
    put(card, 91, 98, fit(b.q_max, 91, 98));
    put(card, 99, 106, fit(b.q_min, 99, 106));
    put(card, 107, 114, fit(b.shunt_g, 107, 114));
    put(card, 115, 122, fit(b.shunt_b, 115, 122));
    put(card, 124, 127, std::to_string(b.remote_bus));
    out += card + '\n';
  }
  out += "-999\n";

  out += "BRANCH DATA FOLLOWS                         " +
         std::to_string(network.branches.size()) + " ITEMS\n";
  for (const auto& br : network.branches) {
    if (br.status != BranchStatus::InService) {
      throw std::invalid_argument("CDF cannot express out-of-service branches");
    }
    card.clear();
    put(card, 1, 4, std::to_string(br.from_bus));
    put(card, 6, 9, std::to_string(br.to_bus));
    put(card, 11, 12, std::to_string(br.area));
    put(card, 13, 14, std::to_string(br.zone));
    put(card, 17, 17, std::to_string(br.circuit_id));
    put(card, 19, 19, std::to_string(br.branch_type));
    put(card, 20, 29, fit(br.resistance_r, 20, 29));
    put(card, 30, 40, fit(br.reactance_x, 30, 40));
    put(card, 41, 50, fit(br.charging_b, 41, 50));
    put(card, 51, 55, fit(br.rating_mva, 51, 55), true);
    put(card, 57, 61, fit(br.rating2_mva, 57, 61), true);
    put(card, 63, 67, fit(br.rating3_mva, 63, 67), true);
    put(card, 77, 82, fit(br.tap_ratio, 77, 82));
    put(card, 84, 90, fit(br.phase_shift_deg, 84, 90));
    out += card + '\n';
  }
  out += "-999\n";
  out += "LOSS ZONES FOLLOWS                     0 ITEMS\n-99\n";
  out += "INTERCHANGE DATA FOLLOWS                 0 ITEMS\n-9\n";
  out += "TIE LINES FOLLOWS                     0 ITEMS\n-999\n";
  out += "END OF DATA\n";
  return out;
}

}  // namespace gridscreen
