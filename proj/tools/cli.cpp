#include "cli.hpp"

#include <charconv>
#include <filesystem>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "gridscreen/report.hpp"
#include "gridscreen/screening.hpp"

namespace gridscreen::tools {

namespace {

int to_int(std::string_view s, std::string_view spec) {
  int v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size() || v <= 0) {
    throw UsageError(fmt::format("bad branch '{}': expected from-to or from-to-ckt", spec));
  }
  return v;
}

}  // namespace

BranchSpec parse_branch_spec(std::string_view spec) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    auto dash = spec.find('-', start);
    parts.push_back(spec.substr(start, dash - start));
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  if (parts.size() != 2 && parts.size() != 3) {
    throw UsageError(fmt::format("bad branch '{}': expected from-to or from-to-ckt", spec));
  }
  BranchSpec out;
  out.from = to_int(parts[0], spec);
  out.to = to_int(parts[1], spec);
  if (parts.size() == 3) out.ckt = to_int(parts[2], spec);
  return out;
}

EdgeId resolve_branch_spec(const BaseGraph& graph, std::string_view spec) {
  auto b = parse_branch_spec(spec);
  try {
    return graph.resolve(b.from, b.to, b.ckt);
  } catch (const GraphError& e) {
    throw UsageError(fmt::format("branch '{}': {}", spec, e.what()));
  }
}

InputFormat input_format_from_string(std::string_view s) {
  if (s == "auto") return InputFormat::Auto;
  if (s == "cdf") return InputFormat::Cdf;
  if (s == "json") return InputFormat::Json;
  throw UsageError(fmt::format("unknown input format '{}'", s));
}

int run_screen(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"N-1 line contingency screening"};
  app.name("screen");
  std::string input;
  std::string input_format = "auto";
  std::string output;
  std::string format = "table";
  std::string weights_path;
  std::size_t top = 0;
  unsigned parallelism = 1;
  std::vector<std::string> whatif;

  app.add_option("-i,--input", input, "Network file (IEEE CDF or native JSON)")->required();
  app.add_option("--input-format", input_format, "auto, cdf or json")
      ->check(CLI::IsMember({"auto", "cdf", "json"}));
  app.add_option("-o,--output", output, "Write the report here instead of stdout");
  app.add_option("-f,--format", format, "json, csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("-w,--weights", weights_path, "Severity weights JSON");
  app.add_option("-n,--top", top, "Keep only the N most severe records")->check(CLI::PositiveNumber);
  app.add_option("-j,--parallelism", parallelism, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--whatif", whatif, "Outage only these branches (from-to or from-to-ckt)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    ScreeningConfig config;
    config.parallelism = parallelism;
    if (top > 0) config.top_n = top;
    if (!weights_path.empty()) {
      try {
        config.weights = load_weights(weights_path);
      } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
      }
    }

    auto network = validate(load_network(input, input_format_from_string(input_format)));
    std::string case_name = network.network().title;
    if (case_name.empty()) case_name = std::filesystem::path(input).stem().string();

    ScreeningContext ctx(std::move(network));
    if (!whatif.empty()) {
      std::vector<EdgeId> ids;
      for (const auto& spec : whatif) ids.push_back(resolve_branch_spec(ctx.graph(), spec));
      config.contingencies = std::move(ids);
    }
    auto report = run_screening(ctx, config);
    auto fmt_kind = report_format_from_string(format);

    if (output.empty()) {
      emit_report(report, fmt_kind, out, case_name);
      // Keep stdout machine-readable; the summary goes to stderr instead.
      if (fmt_kind != ReportFormat::Table) err << counts_block(report, case_name) << timings_block(report);
    } else {
      auto bytes = emit_report(report, fmt_kind, std::filesystem::path(output), case_name);
      out << counts_block(report, case_name) << '\n' << timings_block(report);
      out << fmt::format("wrote {} bytes to {}\n", bytes, output);
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IngestError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const BaseCaseDiverged& e) {
    err << "error: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace gridscreen::tools
