#include "forge/suites.hpp"

#include "checks.hpp"
#include "forge/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>

namespace forge::suites {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<CheckDef> registry() {
  std::vector<CheckDef> all;
  for (auto group : {algebra_checks, charge_checks, form_checks, dynamics_checks,
                     metaplectic_checks, determinant_checks})
    for (auto& c : group()) all.push_back(std::move(c));
  std::sort(all.begin(), all.end(), [](const CheckDef& a, const CheckDef& b) { return a.id < b.id; });
  return all;
}

}  // namespace

Context::Context(const SuiteConfig& config, const std::string& check_id)
    : config_(config), id_(check_id) {
  // Each check draws from its own stream so results do not depend on which
  // other checks ran before it.
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(fnv1a(check_id)),
                    static_cast<std::uint32_t>(fnv1a(check_id) >> 32)};
  rng_.seed(seq);
}

double Context::tol(double fallback) const {
  auto it = config_.tolerances.find(id_);
  return it == config_.tolerances.end() ? fallback : it->second;
}

bool Context::csv_path(const std::string& name, std::string& path) const {
  if (config_.csv_dir.empty()) return false;
  path = (std::filesystem::path(config_.csv_dir) / name).string();
  return true;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
  }
  return "error";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra", "charges",      "forms", "dynamics",
                                              "metaplectic", "determinants", "all"};
  return names;
}

std::vector<CheckInfo> list_checks() {
  std::vector<CheckInfo> out;
  for (const auto& c : registry()) out.push_back({c.id, c.suite, c.anchor});
  return out;
}

void validate(const SuiteConfig& config) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), config.suite) == names.end())
    throw ConfigError("unknown suite '" + config.suite + "'");
  if (config.n < 1 || config.n > 2) throw ConfigError("n must be 1 or 2");
  if (!(config.dt > 0) || !std::isfinite(config.dt)) throw ConfigError("dt must be positive");
  if (!(config.T > 0) || !std::isfinite(config.T)) throw ConfigError("T must be positive");
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  for (const auto& [id, v] : config.tolerances)
    if (!(v > 0) || !std::isfinite(v)) throw ConfigError("tolerance for '" + id + "' must be positive");
}

std::vector<CheckResult> run_suite(const SuiteConfig& config) {
  validate(config);
  std::vector<CheckResult> out;
  for (const auto& def : registry()) {
    if (config.suite != "all" && def.suite != config.suite) continue;
    CheckResult r;
    r.check_id = def.id;
    r.suite = def.suite;
    r.anchor = def.anchor;
    Context ctx(config, def.id);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = def.run(ctx);
      r.status = o.pass ? Status::Pass : Status::Fail;
      r.max_error = o.max_error;
      r.tolerance = o.tolerance;
      r.details = o.details;
    } catch (const std::exception& e) {
      r.status = Status::Error;
      r.details = e.what();
    }
    r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace forge::suites
