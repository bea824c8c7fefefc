#include "gridscreen/report.hpp"

#include <fstream>
#include <ostream>

#include <fmt/format.h>

namespace gridscreen {

using nlohmann::json;

ReportFormat report_format_from_string(std::string_view s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "table") return ReportFormat::Table;
  throw std::invalid_argument(fmt::format("unknown report format '{}'", s));
}

namespace {

json island_to_json(const IslandReport& island) {
  return json{{"buses", island.bus_ids},
              {"vertices", island.vertices},
              {"class", to_string(island.island_class)},
              {"gen_count", island.gen_count},
              {"load_count", island.load_count},
              {"gen_mw", island.gen_mw},
              {"load_mw", island.load_mw}};
}

IslandReport island_from_json(const json& j) {
  IslandReport r;
  r.bus_ids = j.at("buses").get<std::vector<int>>();
  r.vertices = j.at("vertices").get<std::vector<VertexId>>();
  r.island_class = island_class_from_string(j.at("class").get<std::string>());
  r.gen_count = j.at("gen_count").get<std::size_t>();
  r.load_count = j.at("load_count").get<std::size_t>();
  r.gen_mw = j.at("gen_mw").get<double>();
  r.load_mw = j.at("load_mw").get<double>();
  return r;
}

std::string_view record_class(const SeverityRecord& r) {
  return r.islands.empty() ? std::string_view("none") : to_string(r.islands.front().island_class);
}

}  // namespace

json record_to_json(const SeverityRecord& r) {
  json islands = json::array();
  for (const auto& i : r.islands) islands.push_back(island_to_json(i));
  return json{{"contingency", r.contingency},
              {"edge", {{"from", r.edge.from}, {"to", r.edge.to}, {"ckt", r.edge.ckt}}},
              {"si", r.si},
              {"breakdown",
               {{"bus_voltage", r.breakdown.bus_voltage},
                {"line_flow", r.breakdown.line_flow},
                {"gen_shed", r.breakdown.gen_shed},
                {"load_shed", r.breakdown.load_shed},
                {"divergence", r.breakdown.divergence},
                {"islanding", r.breakdown.islanding}}},
              {"islands", std::move(islands)},
              {"diverged", r.diverged}};
}

SeverityRecord record_from_json(const json& j) {
  SeverityRecord r;
  r.contingency = j.at("contingency").get<EdgeId>();
  const auto& e = j.at("edge");
  r.edge = BranchKey{e.at("from").get<int>(), e.at("to").get<int>(), e.at("ckt").get<int>()};
  r.si = j.at("si").get<double>();
  const auto& b = j.at("breakdown");
  r.breakdown.bus_voltage = b.at("bus_voltage").get<double>();
  r.breakdown.line_flow = b.at("line_flow").get<double>();
  r.breakdown.gen_shed = b.at("gen_shed").get<double>();
  r.breakdown.load_shed = b.at("load_shed").get<double>();
  r.breakdown.divergence = b.at("divergence").get<double>();
  r.breakdown.islanding = b.at("islanding").get<double>();
  for (const auto& i : j.at("islands")) r.islands.push_back(island_from_json(i));
  r.diverged = j.at("diverged").get<bool>();
  return r;
}

json counts_to_json(const ScenarioCounts& c) {
  return json{{"generator_islands", c.generator_islands},
              {"load_islands", c.load_islands},
              {"active_islands", c.active_islands},
              {"dead_islands", c.dead_islands},
              {"no_island", c.no_island},
              {"diverged", c.diverged},
              {"total", c.total}};
}

json report_to_json(const ScreeningReport& report) {
  json records = json::array();
  for (const auto& r : report.records) records.push_back(record_to_json(r));
  const auto& t = report.timings;
  return json{{"counts", counts_to_json(report.counts)},
              {"timings_ms",
               {{"graph_init", t.graph_init_ms},
                {"solve_total", t.solve_ms_total},
                {"per_scenario_avg", t.per_scenario_avg_ms},
                {"wall", t.wall_ms}}},
              {"records", std::move(records)}};
}

ScreeningReport report_from_json(const json& j) {
  ScreeningReport report;
  const auto& c = j.at("counts");
  report.counts.generator_islands = c.at("generator_islands").get<std::size_t>();
  report.counts.load_islands = c.at("load_islands").get<std::size_t>();
  report.counts.active_islands = c.at("active_islands").get<std::size_t>();
  report.counts.dead_islands = c.at("dead_islands").get<std::size_t>();
  report.counts.no_island = c.at("no_island").get<std::size_t>();
  report.counts.diverged = c.at("diverged").get<std::size_t>();
  report.counts.total = c.at("total").get<std::size_t>();
  const auto& t = j.at("timings_ms");
  report.timings.graph_init_ms = t.at("graph_init").get<double>();
  report.timings.solve_ms_total = t.at("solve_total").get<double>();
  report.timings.per_scenario_avg_ms = t.at("per_scenario_avg").get<double>();
  report.timings.wall_ms = t.at("wall").get<double>();
  for (const auto& r : j.at("records")) report.records.push_back(record_from_json(r));
  return report;
}

std::string report_to_csv(const ScreeningReport& report) {
  std::string out = "edge_id,from,to,ckt,si,class,shed_gen_mw,shed_load_mw,diverged\n";
  for (const auto& r : report.records) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.contingency, r.edge.from, r.edge.to,
                       r.edge.ckt, r.si, record_class(r), r.shed_gen_mw(), r.shed_load_mw(),
                       r.diverged ? "true" : "false");
  }
  return out;
}

std::string counts_block(const ScreeningReport& report, std::string_view case_name) {
  const auto& c = report.counts;
  std::string out;
  if (!case_name.empty()) out += fmt::format("{:<32}{}\n", "Test Case", case_name);
  out += fmt::format("{:<32}{}\n", "Total Branches", c.total);
  out += fmt::format("{:<16}{:<16}{}\n", "Test Scenarios", "Generators", c.generator_islands);
  out += fmt::format("{:<16}{:<16}{}\n", "", "Loads", c.load_islands);
  out += fmt::format("{:<16}{:<16}{}\n", "", "Islands", c.active_islands);
  out += fmt::format("{:<16}{:<16}{}\n", "", "Dead Islands", c.dead_islands);
  out += fmt::format("{:<16}{:<16}{}\n", "", "No Island", c.no_island);
  out += fmt::format("{:<16}{:<16}{}\n", "", "Diverged", c.diverged);
  out += fmt::format("{:<16}{:<16}{}\n", "", "Total", c.total);
  out += fmt::format("{:<32}{:.2f}\n", "Performance (ms)", report.timings.wall_ms);
  return out;
}

std::string timings_block(const ScreeningReport& report) {
  const auto& t = report.timings;
  std::string out;
  out += fmt::format("{:<32}{:.2f}\n", "Graph init (ms)", t.graph_init_ms);
  out += fmt::format("{:<32}{:.2f}\n", "Solve total (ms)", t.solve_ms_total);
  out += fmt::format("{:<32}{:.2f}\n", "Avg per scenario (ms)", t.per_scenario_avg_ms);
  out += fmt::format("{:<32}{:.2f}\n", "Wall (ms)", t.wall_ms);
  return out;
}

std::string report_to_table(const ScreeningReport& report, std::string_view case_name) {
  std::string out = fmt::format("{:>5}  {:<16}{:>14}  {:<14}{:>12}{:>13}  {}\n", "Rank", "Branch",
                                "SI", "Class", "Shed gen MW", "Shed load MW", "Diverged");
  std::size_t rank = 0;
  for (const auto& r : report.records) {
    auto branch = fmt::format("{}-{} ({})", r.edge.from, r.edge.to, r.edge.ckt);
    out += fmt::format("{:>5}  {:<16}{:>14.4f}  {:<14}{:>12.2f}{:>13.2f}  {}\n", ++rank, branch,
                       r.si, record_class(r), r.shed_gen_mw(), r.shed_load_mw(),
                       r.diverged ? "yes" : "no");
  }
  out += '\n';
  out += counts_block(report, case_name);
  out += '\n';
  out += timings_block(report);
  return out;
}

std::string format_report(const ScreeningReport& report, ReportFormat format,
                          std::string_view case_name) {
  switch (format) {
    case ReportFormat::Json: return report_to_json(report).dump(2) + "\n";
    case ReportFormat::Csv: return report_to_csv(report);
    case ReportFormat::Table: return report_to_table(report, case_name);
  }
  return {};
}

std::size_t emit_report(const ScreeningReport& report, ReportFormat format, std::ostream& out,
                        std::string_view case_name) {
  auto text = format_report(report, format, case_name);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoFailure("failed writing report");
  return text.size();
}

std::size_t emit_report(const ScreeningReport& report, ReportFormat format,
                        const std::filesystem::path& destination, std::string_view case_name) {
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure(fmt::format("cannot open '{}' for writing", destination.string()));
  try {
    return emit_report(report, format, out, case_name);
  } catch (const IoFailure&) {
    throw IoFailure(fmt::format("failed writing '{}'", destination.string()));
  }
}

}  // namespace gridscreen
