#include "forge/report.hpp"

#include "forge/errors.hpp"

#include "json.hpp"

#include <cstdio>
#include <sstream>

namespace forge::suites {

using nlohmann::json;

namespace {

const char* ordering_name(PhaseOrdering o) { return o == PhaseOrdering::QP ? "qp" : "pq"; }

json config_json(const SuiteConfig& c) {
  json tol = json::object();
  for (const auto& [id, v] : c.tolerances) tol[id] = v;
  return {{"suite", c.suite}, {"n", c.n},         {"seed", c.seed},
          {"dt", c.dt},       {"T", c.T},         {"trials", c.trials},
          {"ordering", ordering_name(c.ordering)}, {"tolerances", tol}};
}

}  // namespace

std::string report_json(const SuiteConfig& config, const std::vector<CheckResult>& results, bool timings) {
  int pass = 0, fail = 0, error = 0;
  json checks = json::array();
  for (const auto& r : results) {
    switch (r.status) {
      case Status::Pass: ++pass; break;
      case Status::Fail: ++fail; break;
      case Status::Error: ++error; break;
    }
    json item = {{"checkId", r.check_id},
                 {"suite", r.suite},
                 {"paperRef", r.anchor},
                 {"status", status_name(r.status)},
                 {"details", r.details}};
    item["maxError"] = r.max_error ? json(*r.max_error) : json("exact");
    item["tolerance"] = r.tolerance ? json(*r.tolerance) : json(nullptr);
    if (timings) item["elapsed"] = r.elapsed_seconds;
    checks.push_back(std::move(item));
  }
  json doc = {{"config", config_json(config)},
              {"summary", {{"total", results.size()}, {"pass", pass}, {"fail", fail}, {"error", error}}},
              {"checks", checks}};
  return doc.dump(2) + "\n";
}

SuiteConfig config_from_json(const std::string& text, SuiteConfig base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "suite") base.suite = value.get<std::string>();
      else if (key == "n") base.n = value.get<int>();
      else if (key == "seed") base.seed = value.get<std::uint64_t>();
      else if (key == "dt") base.dt = value.get<double>();
      else if (key == "T") base.T = value.get<double>();
      else if (key == "trials") base.trials = value.get<int>();
      else if (key == "tolerances") base.tolerances = value.get<std::map<std::string, double>>();
      else if (key == "ordering") {
        const auto s = value.get<std::string>();
        if (s == "qp") base.ordering = PhaseOrdering::QP;
        else if (s == "pq") base.ordering = PhaseOrdering::PQ;
        else throw ConfigError("ordering must be \"qp\" or \"pq\"");
      } else if (key == "report") base.report_path = value.get<std::string>();
      else if (key == "csv") base.csv_dir = value.get<std::string>();
      else throw ConfigError("unknown config key: " + key);
    }
  } catch (const json::type_error& e) {
    throw ConfigError(std::string("config field has the wrong type: ") + e.what());
  }
  return base;
}

std::string summary_text(const std::vector<CheckResult>& results) {
  std::ostringstream os;
  int failed = 0;
  for (const auto& r : results) {
    char err[64] = "exact";
    if (r.max_error) std::snprintf(err, sizeof err, "%.2e", *r.max_error);
    char tol[64] = "";
    if (r.tolerance) std::snprintf(tol, sizeof tol, " <= %.1e", *r.tolerance);
    os << status_name(r.status) << "  " << r.check_id << " [" << r.anchor << "] " << err << tol;
    if (r.status != Status::Pass) {
      os << "\n      " << r.details;
      ++failed;
    }
    os << "\n";
  }
  os << results.size() - failed << "/" << results.size() << " checks passed\n";
  return os.str();
}

}  // namespace forge::suites
