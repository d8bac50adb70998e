// Command-line front end: `forge run` executes a suite, `forge list` prints
// the registry.

#include "forge/errors.hpp"
#include "forge/report.hpp"
#include "forge/suites.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace forge::suites;

constexpr int kUsageError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw forge::ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t parse_seed(const std::string& text, const char* origin) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw forge::ConfigError(std::string(origin) + " is not an unsigned integer: " + text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suites for the bosonic extended phase-space algebra"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "Run a suite of checks");
  std::string suite = "all";
  std::string config_path;
  std::optional<std::string> seed_text;
  std::string report_path;
  std::string csv_dir;
  bool timings = false;
  bool quiet = false;
  run->add_option("--suite", suite, "algebra | charges | forms | dynamics | metaplectic | determinants | all");
  run->add_option("--config", config_path, "JSON file with SuiteConfig fields");
  run->add_option("--seed", seed_text, "Random seed (overrides FORGE_SEED and the config file)");
  run->add_option("--report", report_path, "Write the JSON report to this path");
  run->add_option("--csv", csv_dir, "Directory for CSV tables");
  run->add_flag("--timings", timings, "Include elapsed seconds in the JSON report");
  run->add_flag("-q,--quiet", quiet, "Print only the final summary line");

  CLI::App* list = app.add_subcommand("list", "List every check with its anchor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  if (list->parsed()) {
    for (const auto& c : list_checks()) std::cout << c.id << " → " << c.anchor << "\n";
    return 0;
  }

  SuiteConfig config;
  try {
    if (!config_path.empty()) config = config_from_json(read_file(config_path), config);
    if (run->count("--suite")) config.suite = suite;
    if (const char* env = std::getenv("FORGE_SEED"); env && *env) config.seed = parse_seed(env, "FORGE_SEED");
    if (seed_text) config.seed = parse_seed(*seed_text, "--seed");
    if (!report_path.empty()) config.report_path = report_path;
    if (!csv_dir.empty()) config.csv_dir = csv_dir;
    validate(config);

    if (!config.csv_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(config.csv_dir, ec);
      if (ec || !std::filesystem::is_directory(config.csv_dir))
        throw forge::ConfigError("cannot create CSV directory " + config.csv_dir);
    }
    std::ofstream report;
    if (!config.report_path.empty()) {
      report.open(config.report_path);
      if (!report) throw forge::ConfigError("cannot write report to " + config.report_path);
    }

    const std::vector<CheckResult> results = run_suite(config);
    const std::string text = summary_text(results);
    if (quiet) std::cout << text.substr(text.rfind('\n', text.size() - 2) + 1);
    else std::cout << text;
    if (report.is_open()) {
      report << report_json(config, results, timings);
      if (!report) throw forge::ConfigError("failed writing report to " + config.report_path);
    }
    for (const auto& r : results)
      if (r.status != Status::Pass) return 1;
    return 0;
  } catch (const forge::ConfigError& e) {
    std::cerr << "forge: " << e.what() << "\n";
    return kUsageError;
  }
}
