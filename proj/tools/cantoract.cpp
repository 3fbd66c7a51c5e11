// Batch front end: parse a model/check configuration, run the check, emit
// the report on stdout and the witness/certificate artifact under --out.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cantor/runner.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"checks for group-chain odometer models"};
  std::string config_path;
  std::string out_dir = ".";
  std::string verify_path;
  bool quiet = false;
  app.add_option("--config", config_path, "configuration file")->required();
  app.add_option("--out", out_dir, "directory for artifacts (default .)");
  app.add_option("--verify", verify_path, "re-check a serialized witness/certificate");
  app.add_flag("--quiet", quiet, "suppress the stdout report");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cantor::kExitInputError;
  }

  cantor::RunConfig cfg;
  try {
    cfg = cantor::parse_config(slurp(config_path));
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cantor::kExitInputError;
  }

  cantor::RunOutcome outcome;
  if (!verify_path.empty()) {
    std::string artifact;
    try {
      artifact = slurp(verify_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return cantor::kExitInputError;
    }
    outcome = cantor::run_verify(cfg, artifact);
  } else {
    outcome = cantor::run(cfg);
  }

  if (!quiet && !outcome.report.empty()) std::cout << outcome.report;
  if (outcome.artifact_name && outcome.artifact_text) {
    std::filesystem::path path = std::filesystem::path(out_dir) / *outcome.artifact_name;
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write artifact to " << path.string() << "\n";
      return cantor::kExitInputError;
    }
    out << *outcome.artifact_text;
    if (!quiet) std::cout << "artifact: " << path.string() << "\n";
  }
  return outcome.exit_code;
}
