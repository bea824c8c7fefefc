#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gridscreen/network.hpp"
#include "support/fixtures.hpp"

namespace gridscreen {
namespace {

using testing::branch;
using testing::bus;

// Two-bus CDF deck laid out on the standard columns.
constexpr const char* kTwoBus =
    " 01/01/00 TEST                 100.0  2000 S two bus\n"
    "BUS DATA FOLLOWS                            2 ITEMS\n"
    "   1 Slack         1  1  3 1.0000   0.00     0.00      0.00   10.00    0.00   138.0 1.0000     0.0     0.0  0.0000  0.0000    0\n"
    "   2 Load          1  1  0 1.0000   0.00    10.00      0.00    0.00    0.00   138.0 0.0000     0.0     0.0  0.0000  0.0000    0\n"
    "-999\n"
    "BRANCH DATA FOLLOWS                         1 ITEMS\n"
    "   1    2  1 1  1 0   0.00000    0.10000   0.00000     0     0        0 0  0.0000    0.00\n"
    "-999\n"
    "END OF DATA\n";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  s.replace(s.find(from), from.size(), to);
  return s;
}

template <typename Fn>
IngestError expect_ingest_error(Fn&& fn) {
  try {
    fn();
  } catch (const IngestError& e) {
    return e;
  }
  ADD_FAILURE() << "expected IngestError";
  return IngestError(IngestErrc::Io, "none");
}

TEST(ParseCdf, TwoBusDeck) {
  auto net = parse_cdf(kTwoBus);
  EXPECT_DOUBLE_EQ(net.base_mva, 100.0);
  EXPECT_EQ(net.title, "two bus");
  ASSERT_EQ(net.buses.size(), 2u);
  ASSERT_EQ(net.branches.size(), 1u);
  EXPECT_EQ(net.buses[0].bus_type, BusType::Slack);
  EXPECT_EQ(net.buses[0].name, "Slack");
  EXPECT_EQ(net.buses[1].bus_type, BusType::PQ);
  EXPECT_DOUBLE_EQ(net.buses[1].load_mw, 10.0);
  EXPECT_DOUBLE_EQ(net.buses[0].gen_mw, 10.0);
  EXPECT_DOUBLE_EQ(net.branches[0].reactance_x, 0.1);
  EXPECT_EQ(net.branches[0].circuit_id, 1);
  EXPECT_EQ(net.branches[0].status, BranchStatus::InService);
}

TEST(ParseCdf, BusTypeCodes) {
  auto deck = std::string(kTwoBus);
  auto pv = replace(deck, "   2 Load          1  1  0", "   2 Load          1  1  2");
  EXPECT_EQ(parse_cdf(pv).buses[1].bus_type, BusType::PV);
  auto hold_mvar = replace(deck, "   2 Load          1  1  0", "   2 Load          1  1  1");
  EXPECT_EQ(parse_cdf(hold_mvar).buses[1].bus_type, BusType::PQ);
  auto bogus = replace(deck, "   2 Load          1  1  0", "   2 Load          1  1  7");
  auto e = expect_ingest_error([&] { parse_cdf(bogus); });
  EXPECT_EQ(e.code(), IngestErrc::MalformedCard);
  EXPECT_EQ(e.line(), 4);
}

TEST(ParseCdf, DanglingBranch) {
  auto deck = replace(kTwoBus, "   1    2  1 1", "   1   99  1 1");
  auto e = expect_ingest_error([&] { parse_cdf(deck); });
  EXPECT_EQ(e.code(), IngestErrc::DanglingBranch);
  EXPECT_EQ(e.bus(), 99);
}

TEST(ParseCdf, DuplicateBus) {
  auto deck = replace(kTwoBus, "   2 Load ", "   1 Load ");
  auto e = expect_ingest_error([&] { parse_cdf(deck); });
  EXPECT_EQ(e.code(), IngestErrc::DuplicateBus);
  EXPECT_EQ(e.bus(), 1);
}

TEST(ParseCdf, MissingTerminator) {
  std::string deck = kTwoBus;
  deck = deck.substr(0, deck.rfind("-999"));
  auto e = expect_ingest_error([&] { parse_cdf(deck); });
  EXPECT_EQ(e.code(), IngestErrc::MissingSectionTerminator);
}

TEST(ParseCdf, MalformedCardReportsLine) {
  auto deck = replace(kTwoBus, "   0.10000", "   0.1x000");
  auto e = expect_ingest_error([&] { parse_cdf(deck); });
  EXPECT_EQ(e.code(), IngestErrc::MalformedCard);
  EXPECT_EQ(e.line(), 7);
}

TEST(ParseCdf, Ieee118) {
  auto net = testing::load_fixture("ieee118.cdf");
  EXPECT_EQ(net.buses.size(), 118u);
  EXPECT_EQ(net.branches.size(), 186u);
  EXPECT_DOUBLE_EQ(net.base_mva, 100.0);
  auto v = validate(net);
  EXPECT_EQ(v.bus_id(v.slack_index()), 69);
  // Parallel circuits come through with distinct circuit ids.
  int twins = 0;
  for (const auto& br : net.branches) twins += br.circuit_id == 2;
  EXPECT_EQ(twins, 7);
}

TEST(ParseCdf, Deterministic) {
  auto text = testing::read_file(testing::data_path("ieee118.cdf"));
  EXPECT_EQ(parse_cdf(text), parse_cdf(text));
}

TEST(WriteCdf, RoundTripsIeee118) {
  auto net = testing::load_fixture("ieee118.cdf");
  EXPECT_EQ(parse_cdf(write_cdf(net)), net);
}

TEST(NativeJson, RoundTripsCdfInput) {
  auto net = testing::load_fixture("ieee118.cdf");
  EXPECT_EQ(parse_native_json(emit_native_json(net)), net);
}

TEST(NativeJson, EmptyBusList) {
  auto e = expect_ingest_error(
      [] { parse_native_json(R"({"base_mva": 100, "buses": [], "branches": []})"); });
  EXPECT_EQ(e.code(), IngestErrc::SchemaViolation);
  EXPECT_EQ(e.path(), "buses");
}

TEST(NativeJson, SchemaPaths) {
  auto e = expect_ingest_error([] {
    parse_native_json(R"({"base_mva": 100, "buses": [{"id": 1, "type": "Slack", "load_mw": 0, "gen_mw": 0},
                                                      {"id": "2", "type": "PQ", "load_mw": 0, "gen_mw": 0}],
                          "branches": []})");
  });
  EXPECT_EQ(e.path(), "buses/1/id");
  e = expect_ingest_error([] { parse_native_json(R"({"buses": []})"); });
  EXPECT_EQ(e.path(), "base_mva");
  e = expect_ingest_error([] { parse_native_json("not json"); });
  EXPECT_EQ(e.code(), IngestErrc::SchemaViolation);
  e = expect_ingest_error([] {
    parse_native_json(R"({"base_mva": 100, "buses": [{"id": 1, "type": "Swing", "load_mw": 0, "gen_mw": 0}],
                          "branches": []})");
  });
  EXPECT_EQ(e.path(), "buses/0/type");
}

TEST(NativeJson, EightBusFixture) {
  auto net = testing::load_fixture("eight_bus.json");
  EXPECT_EQ(net.buses.size(), 8u);
  auto has = [&](int a, int b) {
    return std::any_of(net.branches.begin(), net.branches.end(), [&](const BranchRecord& br) {
      return (br.from_bus == a && br.to_bus == b) || (br.from_bus == b && br.to_bus == a);
    });
  };
  EXPECT_TRUE(has(2, 6));
  EXPECT_TRUE(has(6, 7));
}

TEST(NativeJson, OptionalVoltageLimitsSurvive) {
  PowerNetwork net;
  net.buses = {bus(1, BusType::Slack), bus(2, BusType::PQ, 0, 5)};
  net.buses[1].v_min = 0.95;
  net.buses[1].v_max = 1.05;
  net.branches = {branch(1, 2, 0.2)};
  net.branches[0].status = BranchStatus::OutOfService;
  EXPECT_EQ(parse_native_json(emit_native_json(net)), net);
}

TEST(DetectFormat, SniffsLeadingBrace) {
  EXPECT_EQ(detect_format("  {\"base_mva\": 1}"), InputFormat::Json);
  EXPECT_EQ(detect_format(kTwoBus), InputFormat::Cdf);
}

TEST(LoadNetwork, MissingFileIsIoError) {
  auto e = expect_ingest_error([] { load_network("/nonexistent/missing.cdf"); });
  EXPECT_EQ(e.code(), IngestErrc::Io);
  EXPECT_NE(std::string(e.what()).find("missing.cdf"), std::string::npos);
}

TEST(Validate, ParallelCircuitsAllowed) {
  auto v = validate(testing::parallel_pair());
  EXPECT_EQ(v.network().branches.size(), 2u);
}

TEST(Validate, ZeroReactance) {
  auto net = testing::parallel_pair();
  net.branches[1].reactance_x = 0.0;
  auto e = expect_ingest_error([&] { validate(net); });
  EXPECT_EQ(e.code(), IngestErrc::ZeroReactance);
  EXPECT_EQ(e.branch(), 1u);
}

TEST(Validate, NoSlackBus) {
  auto net = testing::parallel_pair();
  net.buses[0].bus_type = BusType::PV;
  EXPECT_EQ(expect_ingest_error([&] { validate(net); }).code(), IngestErrc::NoSlackBus);
}

TEST(Validate, DuplicateBranchKeyIsOrientationFree) {
  auto net = testing::parallel_pair();
  net.branches[1] = branch(2, 1, 0.1, 1);
  EXPECT_EQ(expect_ingest_error([&] { validate(net); }).code(), IngestErrc::DuplicateBranchKey);
}

TEST(Validate, RejectsBrokenInvariants) {
  auto net = testing::parallel_pair();
  net.base_mva = 0.0;
  EXPECT_EQ(expect_ingest_error([&] { validate(net); }).code(), IngestErrc::InvalidValue);

  net = testing::parallel_pair();
  net.buses[1].v_min = 1.1;
  net.buses[1].v_max = 0.9;
  EXPECT_EQ(expect_ingest_error([&] { validate(net); }).code(), IngestErrc::InvalidValue);

  net = testing::parallel_pair();
  net.branches[0].to_bus = 1;
  EXPECT_EQ(expect_ingest_error([&] { validate(net); }).code(), IngestErrc::InvalidValue);

  net = testing::parallel_pair();
  net.branches[0].to_bus = 7;
  EXPECT_EQ(expect_ingest_error([&] { validate(net); }).code(), IngestErrc::DanglingBranch);
}

TEST(Validate, IndexBijection) {
  auto v = validate(testing::load_fixture("ieee118.cdf"));
  std::set<std::size_t> seen;
  for (const auto& b : v.network().buses) {
    auto idx = v.index_of(b.id);
    EXPECT_LT(idx, v.bus_count());
    EXPECT_EQ(v.bus_id(idx), b.id);
    seen.insert(idx);
  }
  EXPECT_EQ(seen.size(), v.bus_count());
  EXPECT_FALSE(v.find_index(9999).has_value());
}

// Any network both formats can express parses to the same value either way.
TEST(Property, CdfAndJsonAgree) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 40; ++trial) {
    testing::RandomNetworkOptions opt;
    opt.buses = 2 + trial * 3;
    auto net = testing::random_network(rng, opt);
    auto via_cdf = parse_cdf(write_cdf(net));
    auto via_json = parse_native_json(emit_native_json(net));
    ASSERT_EQ(via_cdf, via_json) << "trial " << trial;
    ASSERT_EQ(via_json, net);
  }
}

}  // namespace
}  // namespace gridscreen
