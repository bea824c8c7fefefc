#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gridscreen/graph.hpp"
#include "gridscreen/network.hpp"

namespace gridscreen::tools {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInput = 2,     // parse, validation or I/O failure
  kExitDiverged = 3,  // base case cannot be solved
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BranchSpec {
  int from = 0;
  int to = 0;
  std::optional<int> ckt;
};

/// Parses "from-to" or "from-to-ckt". Throws UsageError on anything else.
BranchSpec parse_branch_spec(std::string_view spec);

/// Resolves a what-if spec against the graph. A missing circuit picks the
/// only branch between the buses; several parallel circuits is a UsageError.
EdgeId resolve_branch_spec(const BaseGraph& graph, std::string_view spec);

InputFormat input_format_from_string(std::string_view s);

/// Runs the screen command. `args` excludes the program name.
int run_screen(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gridscreen::tools
