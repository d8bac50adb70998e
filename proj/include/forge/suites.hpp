#pragma once

// Registry of named checks grouped into suites, and the configuration and
// result records the command-line front end serialises.

#include "forge/convention.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace forge::suites {

struct SuiteConfig {
  std::string suite = "all";
  int n = 2;  // largest number of degrees of freedom for symbolic checks
  std::uint64_t seed = 20240917;
  double dt = 1e-3;
  double T = 10.0;
  int trials = 20;  // random cases per randomized property
  std::map<std::string, double> tolerances;  // checkId -> override
  PhaseOrdering ordering = PhaseOrdering::QP;
  std::string report_path;
  std::string csv_dir;
};

enum class Status { Pass, Fail, Error };
const char* status_name(Status s);

struct CheckResult {
  std::string check_id;
  std::string suite;
  std::string anchor;
  Status status = Status::Error;
  std::optional<double> max_error;  // empty means the comparison is exact
  std::optional<double> tolerance;
  std::string details;
  double elapsed_seconds = 0.0;
};

struct CheckInfo {
  std::string id;
  std::string suite;
  std::string anchor;
};

/// Suite names accepted by run_suite, including "all".
const std::vector<std::string>& suite_names();

/// Every registered check, sorted by id.
std::vector<CheckInfo> list_checks();

/// Runs the checks of config.suite sorted by id. Throws ConfigError for an
/// unknown suite or invalid configuration.
std::vector<CheckResult> run_suite(const SuiteConfig& config);

/// Validates tolerances, n, dt, T and trials.
void validate(const SuiteConfig& config);

}  // namespace forge::suites
