#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gridscreen/network.hpp"

namespace gridscreen::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(GRIDSCREEN_TEST_DATA_DIR) / name;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline PowerNetwork load_fixture(const std::string& name) { return load_network(data_path(name)); }

inline BusRecord bus(int id, BusType type, double gen_mw = 0.0, double load_mw = 0.0) {
  BusRecord b;
  b.id = id;
  b.name = "Bus " + std::to_string(id);
  b.bus_type = type;
  b.gen_mw = gen_mw;
  b.load_mw = load_mw;
  return b;
}

inline BranchRecord branch(int from, int to, double x, int ckt = 1, double rating = 0.0) {
  BranchRecord br;
  br.from_bus = from;
  br.to_bus = to;
  br.reactance_x = x;
  br.circuit_id = ckt;
  br.rating_mva = rating;
  return br;
}

/// Slack at 1, two parallel circuits 1-2 carrying a 50 MW transfer.
inline PowerNetwork parallel_pair() {
  PowerNetwork n;
  n.base_mva = 100.0;
  n.buses = {bus(1, BusType::Slack), bus(2, BusType::PQ, 0.0, 50.0)};
  n.branches = {branch(1, 2, 0.1, 1), branch(1, 2, 0.1, 2)};
  return n;
}

struct RandomNetworkOptions {
  std::size_t buses = 30;
  double extra_edge_ratio = 0.4;   // chords per bus on top of the spanning tree
  double parallel_probability = 0.05;
  double max_injection_mw = 80.0;
};

/// Connected multigraph: random spanning tree plus chords plus parallel
/// duplicates. Bus 1 is the slack. Values are multiples of 0.01 so they
/// survive fixed-column CDF text unchanged.
inline PowerNetwork random_network(std::mt19937_64& rng, const RandomNetworkOptions& opt = {}) {
  PowerNetwork net;
  net.title = "random";
  net.base_mva = 100.0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto cents = [&](double lo, double hi) {
    std::uniform_int_distribution<int> d(static_cast<int>(lo * 100), static_cast<int>(hi * 100));
    return d(rng) / 100.0;
  };
  for (std::size_t i = 1; i <= opt.buses; ++i) {
    BusType type = i == 1 ? BusType::Slack : (unit(rng) < 0.25 ? BusType::PV : BusType::PQ);
    double gen = type == BusType::PQ ? 0.0 : cents(0.0, opt.max_injection_mw);
    double load = unit(rng) < 0.7 ? cents(0.0, opt.max_injection_mw) : 0.0;
    net.buses.push_back(bus(static_cast<int>(i), type, gen, load));
  }
  std::map<std::pair<int, int>, int> circuits;
  auto add = [&](int a, int b) {
    auto key = std::minmax(a, b);
    int ckt = ++circuits[{key.first, key.second}];
    net.branches.push_back(branch(a, b, cents(0.01, 0.5), ckt, 0.0));
  };
  for (std::size_t i = 2; i <= opt.buses; ++i) {
    std::uniform_int_distribution<int> parent(1, static_cast<int>(i) - 1);
    add(parent(rng), static_cast<int>(i));
  }
  if (opt.buses >= 3) {
    auto chords = static_cast<std::size_t>(opt.extra_edge_ratio * static_cast<double>(opt.buses));
    std::uniform_int_distribution<int> pick(1, static_cast<int>(opt.buses));
    for (std::size_t c = 0; c < chords; ++c) {
      int a = pick(rng), b = pick(rng);
      if (a != b) add(a, b);
    }
  }
  const auto base_edges = net.branches.size();
  for (std::size_t k = 0; k < base_edges; ++k) {
    if (unit(rng) < opt.parallel_probability) add(net.branches[k].from_bus, net.branches[k].to_bus);
  }
  return net;
}

}  // namespace gridscreen::testing
