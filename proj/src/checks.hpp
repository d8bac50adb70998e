#pragma once

// Shared plumbing for the check implementations in checks_*.cpp.

#include "forge/suites.hpp"

#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace forge::suites {

class Context {
 public:
  Context(const SuiteConfig& config, const std::string& check_id);

  const SuiteConfig& config() const { return config_; }
  std::mt19937_64& rng() { return rng_; }
  /// Tolerance for this check: the configured override or the default.
  double tol(double fallback) const;
  /// Opens <csv_dir>/<name> for writing, or returns false when no CSV
  /// directory was configured.
  bool csv_path(const std::string& name, std::string& path) const;

 private:
  const SuiteConfig& config_;
  std::string id_;
  std::mt19937_64 rng_;
};

struct Outcome {
  bool pass = false;
  std::optional<double> max_error;
  std::optional<double> tolerance;
  std::string details;
};

inline Outcome exact(bool pass, std::string details) { return {pass, std::nullopt, std::nullopt, std::move(details)}; }
inline Outcome measured(double error, double tolerance, std::string details) {
  return {error <= tolerance, error, tolerance, std::move(details)};
}

struct CheckDef {
  std::string id;
  std::string suite;
  std::string anchor;
  std::function<Outcome(Context&)> run;
};

std::vector<CheckDef> algebra_checks();
std::vector<CheckDef> charge_checks();
std::vector<CheckDef> form_checks();
std::vector<CheckDef> dynamics_checks();
std::vector<CheckDef> metaplectic_checks();
std::vector<CheckDef> determinant_checks();

/// printf-style formatting into std::string.
template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

}  // namespace forge::suites
