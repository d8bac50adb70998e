#include "doctest.h"

#include "forge/dynamics.hpp"
#include "forge/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace forge;
using namespace forge::dynamics;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("library energies and Hessians at simple points") {
  CHECK(system_library("harmonic").energy(v2(1, 0)) == doctest::Approx(0.5));
  const Mat k = system_library("inverted", {1.0, 2.0}).hessian(v2(0.3, -0.1));
  CHECK(k(0, 0) == doctest::Approx(-4.0));
  CHECK(k(1, 1) == doctest::Approx(1.0));
  CHECK(k(0, 1) == 0.0);
  CHECK(system_library("pendulum").third(v2(0, 0))[0] == 0.0);
  CHECK(system_library("double_well").energy(v2(1, 0)) == doctest::Approx(-0.25));
  CHECK_THROWS_AS(system_library("kepler"), ConfigError);
}

TEST_CASE("PQ ordering swaps the coordinates") {
  const auto qp = system_library("double_well", {}, PhaseOrdering::QP);
  const auto pq = system_library("double_well", {}, PhaseOrdering::PQ);
  CHECK(qp.energy(v2(1.3, 0.2)) == doctest::Approx(pq.energy(v2(0.2, 1.3))));
}

TEST_CASE("step_count rounds non-integer ratios up") {
  CHECK(step_count(1.0, 1e-3) == 1000);
  CHECK(step_count(2 * std::numbers::pi, 1e-3) == 6284);
  CHECK_THROWS(step_count(1.0, 0.0));
}

TEST_CASE("harmonic flow against the closed-form rotation") {
  const auto sys = system_library("harmonic");
  const double t = 1.3;
  const ExtendedState s = integrate_final(sys, {v2(0.7, -0.2), v2(1, 0), v2(0, 1), 0}, t, 1e-3);
  // q(t) = q0 cos t + p0 sin t, p(t) = p0 cos t - q0 sin t.
  CHECK(s.phi[0] == doctest::Approx(0.7 * std::cos(t) - 0.2 * std::sin(t)).epsilon(1e-10));
  CHECK(s.phi[1] == doctest::Approx(-0.2 * std::cos(t) - 0.7 * std::sin(t)).epsilon(1e-10));
  CHECK(s.pi[0] == doctest::Approx(std::cos(t)).epsilon(1e-10));
  CHECK(s.t == doctest::Approx(t));
}

TEST_CASE("inverted oscillator tangent map is hyperbolic") {
  const auto sys = system_library("inverted", {1.0, 1.0});
  const Mat m = tangent_map(sys, v2(0.1, 0.1), 1.0, 1e-3);
  // q'' = q gives [[cosh, sinh], [sinh, cosh]].
  CHECK(m(0, 0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-10));
  CHECK(m(0, 1) == doctest::Approx(std::sinh(1.0)).epsilon(1e-10));
  CHECK(m(1, 0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-10));
}

TEST_CASE("xi transports as the inverse transpose of pi") {
  for (const auto& name : library_names()) {
    const auto r = transport_check(system_library(name), {v2(0.4, 0.3), v2(1, 0.5), v2(-0.2, 1), 0}, 2.0, 1e-3);
    CHECK(r.pi_error < 1e-9);
    CHECK(r.xi_error < 1e-9);
    CHECK(r.pairing_drift < 1e-10);
    CHECK(r.symplectic_error < 1e-10);
  }
}

TEST_CASE("diagram residual vanishes at zero displacement") {
  const auto r = brs_diagram_check(system_library("pendulum"), v2(1, 0), v2(0, 1), 1.0, 1e-3, 0.0);
  CHECK(r.residual == 0.0);
}

TEST_CASE("null system leaves every state fixed") {
  const ExtendedState s0{v2(1, 2), v2(3, 4), v2(5, 6), 0};
  const ExtendedState s = integrate_final(null_system(1), s0, 1.0, 0.1);
  CHECK(s.phi == s0.phi);
  CHECK(s.pi == s0.pi);
  CHECK(s.xi == s0.xi);
}

TEST_CASE("nonfinite states are rejected or reported as divergence") {
  const ExtendedState bad{v2(NAN, 0), v2(0, 0), v2(0, 0), 0};
  CHECK_THROWS_AS(integrate(system_library("harmonic"), bad, 1.0, 0.1), PreconditionError);
  // The quartic force overflows within a few steps from q = 1e80.
  const ExtendedState far{v2(1e80, 0), v2(0, 0), v2(0, 0), 0};
  try {
    integrate(system_library("double_well"), far, 1.0, 0.1);
    FAIL("expected divergence");
  } catch (const DivergedError& e) {
    CHECK(e.last_good_time() >= 0.0);
    CHECK(e.last_good_time() < 1.0);
  }
}

TEST_CASE("trajectory CSV header") {
  const Trajectory t = integrate(system_library("harmonic"), {v2(1, 0), v2(0, 0), v2(0, 0), 0}, 0.2, 0.1);
  std::ostringstream os;
  write_trajectory_csv(os, t);
  CHECK(os.str().rfind("t,phi_1,phi_2,pi_1,pi_2,xi_1,xi_2\n", 0) == 0);
  CHECK(t.states.size() == 3);
}
