// Acceptance gate: one PASS/FAIL line per primary criterion. Tolerances are
// pinned here and compared against the measured errors, independently of the
// defaults compiled into the registry.
//
// Usage: forge_acceptance <path-to-forge-binary>

#include "forge/suites.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace forge::suites;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  bool pass = true;
  std::string notes;

  /// Check passes and, when a bound is given, its measured error is within it.
  void require(const std::map<std::string, CheckResult>& results, const std::string& id, double bound = -1) {
    const auto it = results.find(id);
    if (it == results.end()) {
      fail(id + " missing");
      return;
    }
    const CheckResult& r = it->second;
    if (r.status != Status::Pass) fail(id + " " + status_name(r.status) + ": " + r.details);
    if (bound > 0) {
      if (!r.max_error) fail(id + " reports no measured error");
      else if (*r.max_error > bound) fail(id + " error above the pinned bound");
    }
  }
  void require_exact(const std::map<std::string, CheckResult>& results, const std::string& id) {
    require(results, id);
    const auto it = results.find(id);
    if (it != results.end() && it->second.max_error) fail(id + " is not an exact comparison");
  }
  void fail(const std::string& why) {
    pass = false;
    notes += (notes.empty() ? "" : "; ") + why;
  }
};

std::map<std::string, CheckResult> run(const std::string& suite, double* seconds) {
  SuiteConfig c;
  c.suite = suite;
  const auto t0 = Clock::now();
  std::map<std::string, CheckResult> out;
  for (auto& r : run_suite(c)) out[r.check_id] = r;
  *seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return out;
}

void print(const char* name, const Criterion& c, const std::string& extra) {
  std::cout << (c.pass ? "PASS " : "FAIL ") << name << " (" << extra << ")";
  if (!c.pass) std::cout << ": " << c.notes;
  std::cout << std::endl;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: forge_acceptance <forge-binary>\n";
    return 2;
  }
  const std::string forge = argv[1];
  int failures = 0;
  char buf[256];

  {
    double secs = 0;
    auto r = run("charges", &secs);
    double forms_secs = 0;
    const auto f = run("forms", &forms_secs);
    r.insert(f.begin(), f.end());
    Criterion c;
    for (const char* id : {"hermiticity_bfa", "lie_bracket", "conservation_Qg", "conservation_N", "conservation_Nbar",
                           "brs_anomaly", "susy_algebra", "q1_action", "q1_square", "k_vanish",
                           "anomaly_phi_commute", "charges.structure", "ghost_grading",
                           "forms.multiform_hermiticity"})
      c.require_exact(r, id);
    if (secs >= 60) c.fail("symbolic identities took longer than 60 s");
    std::snprintf(buf, sizeof buf, "n in {1,2}, zero tolerance, %.2f s", secs);
    print("symbolic_identities", c, buf);
    failures += !c.pass;
  }
  {
    double secs = 0;
    const auto r = run("forms", &secs);
    Criterion c;
    for (const char* id : {"forms.equivalence_n1", "forms.equivalence_n2", "forms.two_form_bracket",
                           "forms.one_form_bracket", "forms.symplectic_form_invariant"})
      c.require_exact(r, id);
    // At least 20 pairs per degree: 3 degrees at n=1 and 5 at n=2.
    for (auto [id, want] : {std::pair{"forms.equivalence_n1", 60}, std::pair{"forms.equivalence_n2", 100}}) {
      const auto it = r.find(id);
      if (it == r.end() || std::atoi(it->second.details.c_str()) < want) c.fail(std::string(id) + " ran too few pairs");
    }
    if (secs >= 120) c.fail("form checks took longer than 2 min");
    std::snprintf(buf, sizeof buf, "all m <= 2n, exact rationals, %.2f s", secs);
    print("form_equivalence", c, buf);
    failures += !c.pass;
  }
  {
    double secs = 0;
    const auto r = run("dynamics", &secs);
    Criterion c;
    c.require(r, "dynamics.monodromy_harmonic", 1e-8);
    c.require(r, "dynamics.tangent_symplectic", 1e-7);
    c.require(r, "dynamics.transport", 1e-6);
    c.require(r, "dynamics.pairing", 1e-8);
    c.require(r, "dynamics.growth_rates", 0.01);
    c.require(r, "dynamics.brs_diagram", 0.5);
    print("dynamics", c, "monodromy 1e-8, symplectic 1e-7, transport 1e-6, pairing 1e-8, rate 1%, ratio 4+-0.5");
    failures += !c.pass;
  }
  {
    double secs = 0;
    const auto r = run("metaplectic", &secs);
    Criterion c;
    c.require(r, "metaplectic.clifford", 1e-12);
    c.require(r, "metaplectic.sigma_gamma_commutator", 1e-12);
    c.require(r, "metaplectic.sigma_hermiticity", 1e-14);
    c.require(r, "metaplectic.unitarity", 1e-10);
    c.require(r, "metaplectic.intertwine", 0.5);
    c.require(r, "jacobi_bilinear", 1e-6);
    c.require(r, "metaplectic.svh_hermiticity", 1e-12);
    c.require(r, "metaplectic.cpi_witness");
    print("metaplectic", c, "Clifford/G2 1e-12, hermiticity 1e-14, unitarity 1e-10, Jacobi 1e-6, SvH 1e-12 + witness");
    failures += !c.pass;
  }
  {
    double secs = 0;
    const auto r = run("determinants", &secs);
    Criterion c;
    c.require(r, "determinants.product_identity");
    c.require(r, "determinants.synthetic_closed_form", 0.01);
    c.require(r, "determinants.gaussian_inverse_det", 0.01);
    print("determinants", c, "linear decay ratio in [1.7, 2.5], closed form 1%, Gaussian 1%");
    failures += !c.pass;
  }
  {
    Criterion c;
    const auto dir = std::filesystem::temp_directory_path() / ("forge_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const std::string a = (dir / "a.json").string();
    const std::string b = (dir / "b.json").string();
    auto invoke = [&](const std::string& report) {
      const std::string cmd = "\"" + forge + "\" run --suite all -q --report \"" + report + "\" > /dev/null";
      const int status = std::system(cmd.c_str());
      return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    const auto t0 = Clock::now();
    const int code = invoke(a);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const int code2 = invoke(b);
    if (code != 0 || code2 != 0) c.fail("exit codes " + std::to_string(code) + ", " + std::to_string(code2));
    if (secs >= 300) c.fail("run took longer than 5 minutes");
    const std::string ja = slurp(a);
    if (ja.empty() || ja != slurp(b)) c.fail("reports differ between runs");
    std::size_t count = 0;
    try {
      const auto doc = nlohmann::json::parse(ja);
      for (const auto& item : doc.at("checks")) {
        ++count;
        if (item.at("paperRef").get<std::string>().empty()) c.fail(item.at("checkId").get<std::string>() + " has no anchor");
      }
    } catch (const std::exception& e) {
      c.fail(std::string("report does not parse: ") + e.what());
    }
    if (count < 30) c.fail("fewer than 30 checks");
    std::filesystem::remove_all(dir);
    std::snprintf(buf, sizeof buf, "%zu checks, %.2f s, exit %d", count, secs, code);
    print("end_to_end", c, buf);
    failures += !c.pass;
  }
  return failures == 0 ? 0 : 1;
}
