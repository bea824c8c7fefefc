#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "gridscreen/report.hpp"
#include "support/fixtures.hpp"

namespace gridscreen::tools {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run screen(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_screen(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return testing::data_path(name).string(); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("gridscreen_cli_" + name);
}

TEST(ParseBranchSpec, Forms) {
  auto a = parse_branch_spec("8-9");
  EXPECT_EQ(a.from, 8);
  EXPECT_EQ(a.to, 9);
  EXPECT_FALSE(a.ckt.has_value());
  auto b = parse_branch_spec("42-49-2");
  EXPECT_EQ(b.ckt, 2);
  for (const char* bad : {"", "8", "8-", "-9", "8-9-1-1", "a-b", "8--9", "8-9-x"})
    EXPECT_THROW(parse_branch_spec(bad), UsageError) << bad;
}

TEST(Screen, TableTopTen) {
  auto r = screen({"--input", fixture("ieee118.cdf"), "--format", "table", "--top", "10"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("Rank"), std::string::npos);
  EXPECT_NE(r.out.find("\n   10  "), std::string::npos);
  EXPECT_EQ(r.out.find("\n   11  "), std::string::npos);
  EXPECT_NE(r.out.find("Total Branches                  186"), std::string::npos);
  EXPECT_NE(r.out.find("Performance (ms)"), std::string::npos);
  EXPECT_NE(r.out.find("Avg per scenario (ms)"), std::string::npos);
}

TEST(Screen, MissingInputNamesPath) {
  auto r = screen({"--input", "missing.cdf"});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("missing.cdf"), std::string::npos);
}

TEST(Screen, WhatIfGeneratorIsland) {
  // Same network through the JSON front door.
  auto json_path = temp_file("ieee118.json");
  {
    std::ofstream f(json_path);
    f << emit_native_json(testing::load_fixture("ieee118.cdf"));
  }
  auto r = screen({"--input", json_path.string(), "--whatif", "8-9", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["records"].size(), 1u);
  const auto& rec = j["records"][0];
  EXPECT_EQ(rec["edge"]["from"], 8);
  EXPECT_EQ(rec["edge"]["to"], 9);
  ASSERT_EQ(rec["islands"].size(), 1u);
  EXPECT_EQ(rec["islands"][0]["class"], "Generator");
  EXPECT_DOUBLE_EQ(rec["islands"][0]["gen_mw"].get<double>() / 100.0, 4.5);
  EXPECT_EQ(j["counts"]["generator_islands"], 1);
  EXPECT_EQ(j["counts"]["total"], 1);
  // Summary goes to stderr when the report owns stdout.
  EXPECT_NE(r.err.find("Performance (ms)"), std::string::npos);
  std::filesystem::remove(json_path);
}

TEST(Screen, OutputFileJsonMatchesCsv) {
  auto json_path = temp_file("out.json");
  auto csv_path = temp_file("out.csv");
  auto a = screen({"-i", fixture("ieee30.cdf"), "-o", json_path.string(), "-f", "json"});
  auto b = screen({"-i", fixture("ieee30.cdf"), "-o", csv_path.string(), "-f", "csv", "-j", "4"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_NE(a.out.find("wrote "), std::string::npos);
  EXPECT_NE(a.out.find("Test Scenarios"), std::string::npos);

  auto report = report_from_json(nlohmann::json::parse(testing::read_file(json_path)));
  auto net = validate(testing::load_fixture("ieee30.cdf"));
  EXPECT_EQ(report.records.size(), net.network().branches.size());

  // Field-by-field agreement between the two emissions.
  std::istringstream csv(testing::read_file(csv_path));
  std::string line;
  std::getline(csv, line);
  for (const auto& rec : report.records) {
    ASSERT_TRUE(std::getline(csv, line));
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    ASSERT_EQ(f.size(), 9u);
    EXPECT_EQ(std::stoul(f[0]), rec.contingency);
    EXPECT_EQ(std::stoi(f[1]), rec.edge.from);
    EXPECT_EQ(std::stoi(f[2]), rec.edge.to);
    EXPECT_EQ(std::stoi(f[3]), rec.edge.ckt);
    EXPECT_EQ(std::stod(f[4]), rec.si);
    EXPECT_EQ(f[5], rec.islands.empty() ? "none" : std::string(to_string(rec.islands[0].island_class)));
    EXPECT_EQ(std::stod(f[6]), rec.shed_gen_mw());
    EXPECT_EQ(std::stod(f[7]), rec.shed_load_mw());
    EXPECT_EQ(f[8], rec.diverged ? "true" : "false");
  }
  EXPECT_FALSE(std::getline(csv, line));
  std::filesystem::remove(json_path);
  std::filesystem::remove(csv_path);
}

TEST(Screen, UsageErrors) {
  EXPECT_EQ(screen({}).code, kExitUsage);
  EXPECT_EQ(screen({"--input", fixture("triangle.json"), "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(screen({"--input", fixture("triangle.json"), "--top", "0"}).code, kExitUsage);
  EXPECT_EQ(screen({"--input", fixture("triangle.json"), "--bogus"}).code, kExitUsage);
  EXPECT_EQ(screen({"--input", fixture("triangle.json"), "--whatif", "1-9"}).code, kExitUsage);
  EXPECT_EQ(screen({"--help"}).code, kExitOk);
}

TEST(Screen, AmbiguousWhatIfIsUsageError) {
  auto path = temp_file("pair.json");
  {
    std::ofstream f(path);
    f << emit_native_json(testing::parallel_pair());
  }
  auto r = screen({"--input", path.string(), "--whatif", "1-2"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_EQ(screen({"--input", path.string(), "--whatif", "1-2-2"}).code, kExitOk);
  std::filesystem::remove(path);
}

TEST(Screen, InputFailures) {
  auto path = temp_file("broken.json");
  {
    std::ofstream f(path);
    f << R"({"base_mva": 100, "buses": []})";
  }
  EXPECT_EQ(screen({"--input", path.string()}).code, kExitInput);
  EXPECT_EQ(screen({"--input", fixture("triangle.json"), "--input-format", "cdf"}).code, kExitInput);
  EXPECT_EQ(screen({"--input", fixture("triangle.json"), "--weights", "/nonexistent.json"}).code,
            kExitInput);
  EXPECT_EQ(screen({"--input", fixture("triangle.json"), "-o", "/nonexistent/dir/x.json"}).code,
            kExitInput);
  std::filesystem::remove(path);
}

TEST(Screen, DivergedBaseCase) {
  PowerNetwork net;
  net.buses = {testing::bus(1, BusType::Slack), testing::bus(2, BusType::PQ, 0, 5),
               testing::bus(3, BusType::PQ, 0, 5)};
  net.branches = {testing::branch(1, 2, 0.1)};
  auto path = temp_file("islanded.json");
  {
    std::ofstream f(path);
    f << emit_native_json(net);
  }
  EXPECT_EQ(screen({"--input", path.string()}).code, kExitDiverged);
  std::filesystem::remove(path);
}

TEST(Screen, WeightsFileApplies) {
  auto path = temp_file("zero.json");
  {
    std::ofstream f(path);
    f << R"({"k_bus": 0, "k_line": 0, "k_gen_shed": 0, "k_load_shed": 0, "k_div": 0, "k_island": 0})";
  }
  auto r = screen({"--input", fixture("eight_bus.json"), "--weights", path.string(), "-f", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const auto& rec : nlohmann::json::parse(r.out)["records"]) EXPECT_EQ(rec["si"], 0.0);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace gridscreen::tools
