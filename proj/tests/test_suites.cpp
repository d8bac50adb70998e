#include "doctest.h"

#include "forge/errors.hpp"
#include "forge/report.hpp"
#include "forge/suites.hpp"

#include <algorithm>
#include <set>

using namespace forge;
using namespace forge::suites;

TEST_CASE("registry ids are unique, sorted and anchored") {
  const auto checks = list_checks();
  CHECK(checks.size() >= 30);
  std::set<std::string> ids;
  for (const auto& c : checks) {
    CHECK_FALSE(c.anchor.empty());
    ids.insert(c.id);
  }
  CHECK(ids.size() == checks.size());
  CHECK(std::is_sorted(checks.begin(), checks.end(), [](auto& a, auto& b) { return a.id < b.id; }));
  auto has = [&](const std::string& id, const std::string& anchor) {
    return std::any_of(checks.begin(), checks.end(), [&](auto& c) { return c.id == id && c.anchor == anchor; });
  };
  CHECK(has("susy_algebra", "Eq. 4.31"));
  CHECK(has("jacobi_bilinear", "Eq. G4"));
}

TEST_CASE("every registered suite is runnable by name") {
  for (const auto& s : suite_names()) {
    if (s == "all") continue;
    bool found = false;
    for (const auto& c : list_checks()) found = found || c.suite == s;
    CHECK_MESSAGE(found, s);
  }
}

TEST_CASE("configuration validation") {
  SuiteConfig c;
  c.suite = "bogus";
  CHECK_THROWS_AS(run_suite(c), ConfigError);
  c = SuiteConfig{};
  c.tolerances["dynamics.energy"] = -1;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = SuiteConfig{};
  c.n = 3;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("charges suite passes and is deterministic") {
  SuiteConfig c;
  c.suite = "charges";
  const auto a = run_suite(c);
  const auto b = run_suite(c);
  CHECK(a.size() == 13);
  for (const auto& r : a) CHECK_MESSAGE(r.status == Status::Pass, r.check_id);
  CHECK(report_json(c, a) == report_json(c, b));
}

TEST_CASE("tolerance overrides reach the checks") {
  SuiteConfig c;
  c.suite = "dynamics";
  c.tolerances["dynamics.energy"] = 1e-30;
  for (const auto& r : run_suite(c))
    if (r.check_id == "dynamics.energy") {
      CHECK(r.status == Status::Fail);
      CHECK(*r.tolerance == 1e-30);
    }
}

TEST_CASE("config documents") {
  const SuiteConfig c = config_from_json(R"({"suite": "forms", "seed": 5, "ordering": "pq", "tolerances": {"x": 0.1}})");
  CHECK(c.suite == "forms");
  CHECK(c.seed == 5);
  CHECK(c.ordering == PhaseOrdering::PQ);
  CHECK(c.tolerances.at("x") == 0.1);
  CHECK_THROWS_AS(config_from_json("{\"colour\": 1}"), ConfigError);
  CHECK_THROWS_AS(config_from_json("[1, 2"), ConfigError);
  CHECK_THROWS_AS(config_from_json("{\"n\": \"two\"}"), ConfigError);
}

TEST_CASE("report marks exact comparisons") {
  CheckResult r;
  r.check_id = "a";
  r.anchor = "Eq. 1";
  r.status = Status::Pass;
  const std::string json = report_json(SuiteConfig{}, {r});
  CHECK(json.find("\"maxError\": \"exact\"") != std::string::npos);
  CHECK(json.find("elapsed") == std::string::npos);
  CHECK(report_json(SuiteConfig{}, {r}, true).find("elapsed") != std::string::npos);
}
