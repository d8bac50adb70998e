#include "forge/bfa.hpp"
#include "forge/determinants.hpp"
#include "forge/dynamics.hpp"
#include "forge/errors.hpp"
#include "forge/report.hpp"
#include "forge/suites.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace forge;

namespace {

PhaseOrdering parse_ordering(const std::string& s) {
  if (s == "qp") return PhaseOrdering::QP;
  if (s == "pq") return PhaseOrdering::PQ;
  throw ConfigError("ordering must be 'qp' or 'pq'");
}

suites::SuiteConfig make_config(const std::string& suite, std::uint64_t seed, int n, double dt, double T,
                                int trials, const std::string& ordering,
                                const std::map<std::string, double>& tolerances) {
  suites::SuiteConfig c;
  c.suite = suite;
  c.seed = seed;
  c.n = n;
  c.dt = dt;
  c.T = T;
  c.trials = trials;
  c.ordering = parse_ordering(ordering);
  c.tolerances = tolerances;
  return c;
}

py::dict result_dict(const suites::CheckResult& r) {
  py::dict d;
  d["check_id"] = r.check_id;
  d["suite"] = r.suite;
  d["anchor"] = r.anchor;
  d["status"] = suites::status_name(r.status);
  d["max_error"] = r.max_error ? py::cast(*r.max_error) : py::none();
  d["tolerance"] = r.tolerance ? py::cast(*r.tolerance) : py::none();
  d["details"] = r.details;
  return d;
}

det::Sign parse_sign(const std::string& s) {
  if (s == "-") return det::Sign::Minus;
  if (s == "+") return det::Sign::Plus;
  throw ConfigError("sign must be '-' or '+'");
}

det::ThetaConvention parse_theta(double t) {
  if (t == 0.0) return det::ThetaConvention::Zero;
  if (t == 0.5) return det::ThetaConvention::Half;
  if (t == 1.0) return det::ThetaConvention::One;
  throw ConfigError("theta0 must be 0, 0.5 or 1");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Symbolic and numerical checks for the bosonic extended phase-space algebra";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<StructuralError>(m, "StructuralError", PyExc_RuntimeError);
  py::register_exception<DivergedError>(m, "DivergedError", PyExc_ArithmeticError);

  m.def("list_checks", [] {
    py::list out;
    for (const auto& c : suites::list_checks()) out.append(py::make_tuple(c.id, c.suite, c.anchor));
    return out;
  }, "(id, suite, anchor) for every registered check, sorted by id.");

  m.def("suite_names", [] { return suites::suite_names(); });

  m.def(
      "run_suite",
      [](const std::string& suite, std::uint64_t seed, int n, double dt, double T, int trials,
         const std::string& ordering, const std::map<std::string, double>& tolerances) {
        const auto config = make_config(suite, seed, n, dt, T, trials, ordering, tolerances);
        std::vector<suites::CheckResult> results;
        {
          py::gil_scoped_release release;
          results = suites::run_suite(config);
        }
        py::list out;
        for (const auto& r : results) out.append(result_dict(r));
        return out;
      },
      py::arg("suite") = "all", py::arg("seed") = suites::SuiteConfig{}.seed, py::arg("n") = 2,
      py::arg("dt") = 1e-3, py::arg("T") = 10.0, py::arg("trials") = 20, py::arg("ordering") = "qp",
      py::arg("tolerances") = std::map<std::string, double>{});

  m.def(
      "report_json",
      [](const std::string& suite, std::uint64_t seed, const std::string& ordering) {
        auto config = make_config(suite, seed, 2, 1e-3, 10.0, 20, ordering, {});
        return suites::report_json(config, suites::run_suite(config));
      },
      py::arg("suite") = "all", py::arg("seed") = suites::SuiteConfig{}.seed, py::arg("ordering") = "qp");

  m.def(
      "bfa_identities",
      [](int n, const std::string& ordering) {
        py::list out;
        for (const auto& v : bfa::all_identities(SymplecticConvention(n, parse_ordering(ordering))))
          out.append(py::make_tuple(v.check_id, v.label, v.pass));
        return out;
      },
      py::arg("n") = 1, py::arg("ordering") = "qp");

  m.def("library_names", &dynamics::library_names);

  m.def(
      "energy",
      [](const std::string& name, const dynamics::Vec& phi, const std::string& ordering) {
        return dynamics::system_library(name, {}, parse_ordering(ordering)).energy(phi);
      },
      py::arg("system"), py::arg("phi"), py::arg("ordering") = "qp");

  m.def(
      "integrate",
      [](const std::string& name, const dynamics::Vec& phi0, const dynamics::Vec& pi0, const dynamics::Vec& xi0,
         double T, double dt, const std::string& ordering) {
        const auto sys = dynamics::system_library(name, {}, parse_ordering(ordering));
        const auto traj = dynamics::integrate(sys, {phi0, pi0, xi0, 0.0}, T, dt);
        const auto rows = static_cast<Eigen::Index>(traj.states.size());
        Eigen::MatrixXd out(rows, 7);
        for (Eigen::Index i = 0; i < rows; ++i) {
          const auto& s = traj.states[i];
          out(i, 0) = s.t;
          out.block(i, 1, 1, 2) = s.phi.transpose();
          out.block(i, 3, 1, 2) = s.pi.transpose();
          out.block(i, 5, 1, 2) = s.xi.transpose();
        }
        return out;
      },
      py::arg("system"), py::arg("phi0"), py::arg("pi0"), py::arg("xi0"), py::arg("T"), py::arg("dt") = 1e-3,
      py::arg("ordering") = "qp",
      "Rows (t, phi_1, phi_2, pi_1, pi_2, xi_1, xi_2) on the fixed-step grid.");

  m.def(
      "tangent_map",
      [](const std::string& name, const dynamics::Vec& phi0, double T, double dt, const std::string& ordering) {
        return dynamics::tangent_map(dynamics::system_library(name, {}, parse_ordering(ordering)), phi0, T, dt);
      },
      py::arg("system"), py::arg("phi0"), py::arg("T"), py::arg("dt") = 1e-3, py::arg("ordering") = "qp");

  m.def(
      "discrete_determinant",
      [](const std::string& name, const dynamics::Vec& phi0, double T, int steps, const std::string& sign,
         double theta0) {
        const auto grid = det::hamiltonian_grid(dynamics::system_library(name), phi0, T, steps);
        return det::discrete_determinant(grid, parse_sign(sign), parse_theta(theta0));
      },
      py::arg("system"), py::arg("phi0"), py::arg("T"), py::arg("steps"), py::arg("sign") = "-",
      py::arg("theta0") = 0.5);

  m.def("gaussian_inverse_det", &det::gaussian_inverse_det, py::arg("A"), py::arg("eps"));
}
