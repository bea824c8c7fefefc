#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <httplib.h>

#include "cli.hpp"
#include "explorer.hpp"

using namespace gridscreen;

int main(int argc, char** argv) {
  CLI::App app{"HTTP explorer for N-1 screening results"};
  std::string input;
  std::string input_format = "auto";
  std::string weights_path;
  std::string host = "127.0.0.1";
  int port = 8080;
  unsigned parallelism = 1;
  app.add_option("-i,--input", input, "Network file (IEEE CDF or native JSON)");
  app.add_option("--input-format", input_format, "auto, cdf or json")
      ->check(CLI::IsMember({"auto", "cdf", "json"}));
  app.add_option("-w,--weights", weights_path, "Severity weights JSON");
  app.add_option("--host", host, "Address to bind");
  app.add_option("-p,--port", port, "Port to listen on")->check(CLI::Range(1, 65535));
  app.add_option("-j,--parallelism", parallelism, "Worker threads for the sweep")
      ->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? tools::kExitOk : tools::kExitUsage;
  }

  std::unique_ptr<tools::ExplorerSession> session;
  try {
    SeverityWeights weights;
    if (!weights_path.empty()) weights = load_weights(weights_path);
    if (input.empty()) {
      session = std::make_unique<tools::ExplorerSession>();
    } else {
      auto network = validate(load_network(input, tools::input_format_from_string(input_format)));
      session = std::make_unique<tools::ExplorerSession>(std::move(network), weights, parallelism);
    }
  } catch (const BaseCaseDiverged& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tools::kExitDiverged;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tools::kExitInput;
  }

  httplib::Server server;
  tools::mount_routes(server, *session);
  std::cerr << "listening on http://" << host << ':' << port
            << (session->loaded() ? "" : " (no network loaded)") << '\n';
  if (!server.listen(host, port)) {
    std::cerr << "error: cannot listen on " << host << ':' << port << '\n';
    return tools::kExitInput;
  }
  return tools::kExitOk;
}
