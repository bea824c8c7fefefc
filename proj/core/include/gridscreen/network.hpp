#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gridscreen {

enum class BusType { PQ, PV, Slack };
enum class BranchStatus { InService, OutOfService };

std::string_view to_string(BusType type);
std::string_view to_string(BranchStatus status);

/// One bus card. Angles are in degrees, powers in MW, voltages in per-unit.
struct BusRecord {
  int id = 0;
  std::string name;
  BusType bus_type = BusType::PQ;
  double voltage_mag = 1.0;
  double voltage_ang = 0.0;
  double load_mw = 0.0;
  double gen_mw = 0.0;
  std::optional<double> v_min;
  std::optional<double> v_max;

  // Retained from CDF for lossless ingestion; the DC model does not read these.
  int area = 0;
  int zone = 0;
  double load_mvar = 0.0;
  double gen_mvar = 0.0;
  double base_kv = 0.0;
  double desired_v = 0.0;
  double q_max = 0.0;
  double q_min = 0.0;
  double shunt_g = 0.0;
  double shunt_b = 0.0;
  int remote_bus = 0;

  bool operator==(const BusRecord&) const = default;
};

/// One branch card. `rating_mva == 0` means the branch has no flow limit.
struct BranchRecord {
  int from_bus = 0;
  int to_bus = 0;
  int circuit_id = 1;
  double reactance_x = 0.0;
  double rating_mva = 0.0;
  BranchStatus status = BranchStatus::InService;
  double tap_ratio = 0.0;

  // Retained from CDF; unused by DC screening.
  int area = 0;
  int zone = 0;
  int branch_type = 0;
  double resistance_r = 0.0;
  double charging_b = 0.0;
  double rating2_mva = 0.0;
  double rating3_mva = 0.0;
  double phase_shift_deg = 0.0;

  bool operator==(const BranchRecord&) const = default;
};

struct PowerNetwork {
  std::string title;
  double base_mva = 100.0;
  std::vector<BusRecord> buses;
  std::vector<BranchRecord> branches;

  bool operator==(const PowerNetwork&) const = default;
};

enum class IngestErrc {
  MissingSectionTerminator,
  MalformedCard,
  DanglingBranch,
  DuplicateBus,
  SchemaViolation,
  ZeroReactance,
  NoSlackBus,
  DuplicateBranchKey,
  InvalidValue,
  Io,
};

std::string_view to_string(IngestErrc code);

/// Raised by every ingestion and validation entry point.
///
/// `line()` is the 1-based input line for card errors, `bus()` the offending
/// bus id for referential errors, `path()` the JSON pointer-ish location for
/// schema violations and `branch()` the branch position for branch errors.
class IngestError : public std::runtime_error {
 public:
  IngestError(IngestErrc code, std::string message);

  static IngestError at_line(IngestErrc code, int line, std::string message);
  static IngestError for_bus(IngestErrc code, int bus, std::string message);
  static IngestError for_branch(IngestErrc code, std::size_t branch, std::string message);
  static IngestError at_path(std::string path, std::string message);

  IngestErrc code() const noexcept { return code_; }
  int line() const noexcept { return line_; }
  int bus() const noexcept { return bus_; }
  std::size_t branch() const noexcept { return branch_; }
  const std::string& path() const noexcept { return path_; }

 private:
  IngestErrc code_;
  int line_ = 0;
  int bus_ = 0;
  std::size_t branch_ = 0;
  std::string path_;
};

/// Reads IEEE Common Data Format text (title card, BUS DATA and BRANCH DATA
/// sections, each terminated by -999). Fields are read by fixed column.
PowerNetwork parse_cdf(std::string_view text);

/// Writes fixed-column CDF. Values are rounded to the column widths, so the
/// round trip is exact only for values representable in those widths.
std::string write_cdf(const PowerNetwork& network);

PowerNetwork parse_native_json(std::string_view text);
std::string emit_native_json(const PowerNetwork& network, int indent = 2);

enum class InputFormat { Auto, Cdf, Json };

/// Leading '{' selects JSON; anything else is treated as a CDF title card.
InputFormat detect_format(std::string_view text);
PowerNetwork parse_network(std::string_view text, InputFormat format = InputFormat::Auto);
PowerNetwork load_network(const std::filesystem::path& path, InputFormat format = InputFormat::Auto);

/// A network that passed every invariant check, with buses indexed 0..n-1 in
/// input order.
class ValidatedNetwork {
 public:
  const PowerNetwork& network() const noexcept { return network_; }
  std::size_t bus_count() const noexcept { return network_.buses.size(); }

  /// Index of the reference bus used by the DC solver (first Slack bus).
  std::size_t slack_index() const noexcept { return slack_index_; }

  std::optional<std::size_t> find_index(int bus_id) const;
  std::size_t index_of(int bus_id) const;
  int bus_id(std::size_t index) const { return network_.buses.at(index).id; }

 private:
  friend ValidatedNetwork validate(PowerNetwork network);
  PowerNetwork network_;
  std::unordered_map<int, std::size_t> index_;
  std::size_t slack_index_ = 0;
};

ValidatedNetwork validate(PowerNetwork network);

}  // namespace gridscreen
