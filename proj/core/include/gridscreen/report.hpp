#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "gridscreen/screening.hpp"

namespace gridscreen {

enum class ReportFormat { Json, Csv, Table };

ReportFormat report_format_from_string(std::string_view s);

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json record_to_json(const SeverityRecord& record);
SeverityRecord record_from_json(const nlohmann::json& j);
nlohmann::json counts_to_json(const ScenarioCounts& counts);
nlohmann::json report_to_json(const ScreeningReport& report);
ScreeningReport report_from_json(const nlohmann::json& j);

/// One row per record: edge_id,from,to,ckt,si,class,shed_gen_mw,shed_load_mw,diverged.
std::string report_to_csv(const ScreeningReport& report);

/// Scenario counts laid out like the island-detection summary table
/// (Generators / Loads / Islands / No Island / Total, then performance).
std::string counts_block(const ScreeningReport& report, std::string_view case_name = {});
std::string timings_block(const ScreeningReport& report);

/// Ranked text table followed by the counts and timing blocks.
std::string report_to_table(const ScreeningReport& report, std::string_view case_name = {});

std::string format_report(const ScreeningReport& report, ReportFormat format,
                          std::string_view case_name = {});

/// Writes the report and returns the number of bytes written.
std::size_t emit_report(const ScreeningReport& report, ReportFormat format, std::ostream& out,
                        std::string_view case_name = {});
/// Throws IoFailure if the destination cannot be written.
std::size_t emit_report(const ScreeningReport& report, ReportFormat format,
                        const std::filesystem::path& destination, std::string_view case_name = {});

}  // namespace gridscreen
