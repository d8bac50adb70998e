#include "doctest.h"

#include "forge/errors.hpp"
#include "forge/metaplectic.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace forge;
using namespace forge::meta;
using cd = std::complex<double>;

TEST_CASE("ladder matrix elements of x") {
  const FockRep rep = build_fock(1, 4);
  CHECK(std::abs(rep.x[0](0, 1) - 1 / std::numbers::sqrt2) < 1e-15);
  CHECK(std::abs(rep.x[0](1, 2) - 1.0) < 1e-15);
  CHECK(std::abs(rep.x[0](0, 2)) == 0.0);
  CHECK(std::abs((rep.x[0] * rep.x[0])(0, 0) - 0.5) < 1e-15);
  CHECK_THROWS(build_fock(1, 3));
}

TEST_CASE("gamma matrices are Hermitian and satisfy the projected Clifford relation") {
  for (auto ordering : {PhaseOrdering::QP, PhaseOrdering::PQ}) {
    const FockRep rep = build_fock(2, 6, ordering);
    CHECK(rep.size() == 36);
    CHECK(hermiticity_error(rep) < 1e-15);
    CHECK(clifford_error(rep) < 1e-12);
    CHECK(sigma_gamma_error(rep) < 1e-12);
  }
}

TEST_CASE("metaplectic operator of the number Hamiltonian is a phase per level") {
  // K = I gives (1/2) K Sigma = (x^2 + p^2)/2 = a^dagger a + 1/2.
  const FockRep rep = build_fock(1, 10);
  const double t = 0.37;
  const CMat m = metaplectic_operator(rep, Mat::Identity(2, 2), t);
  for (int k = 0; k < 8; ++k) CHECK(std::abs(m(k, k) - std::exp(cd(0, -t * (k + 0.5)))) < 1e-12);
}

TEST_CASE("symplectic vector matrix is first order in eps") {
  const SymplecticConvention conv(1);
  const Mat s = symplectic_vector(conv, Mat::Identity(2, 2), 0.1);
  CHECK(s(0, 1) == doctest::Approx(0.1));
  CHECK(s(1, 0) == doctest::Approx(-0.1));
}

TEST_CASE("spinor under the zero Hamiltonian is constant") {
  const FockRep rep = build_fock(1, 8);
  const CVec eta = ground_state(rep);
  Vec phi0(2);
  phi0 << 0.3, 0.1;
  const SpinorRun run = integrate_spinor(rep, dynamics::null_system(1), phi0, eta, 1.0, 0.01);
  CHECK((run.eta.back() - eta).norm() == 0.0);
}

TEST_CASE("coherent state bilinear gives twice the phase-space centre") {
  const FockRep rep = build_fock(1, 40);
  const std::vector<cd> alpha{cd(0.5, 0.5)};
  const CVec eta = coherent_state(rep, alpha);
  CHECK(eta.norm() == doctest::Approx(1.0));
  const Vec p = bilinear(rep, eta);
  // <x> = sqrt2 Re alpha, <p> = sqrt2 Im alpha, gamma = sqrt2 phi.
  CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(p[1] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Slater lift sizes and one-particle identity") {
  CMat a = CMat::Random(5, 5);
  CHECK(slater_lift(a, 2).rows() == 10);
  CHECK(slater_lift(a, 1).isApprox(a));
  // Two particles under a diagonal operator: eigenvalues add.
  CMat d = CMat::Zero(3, 3);
  d.diagonal() << 1.0, 2.0, 4.0;
  const CMat l = slater_lift(d, 2);
  CHECK(std::abs(l.trace() - cd(14.0)) < 1e-14);
}

TEST_CASE("vector representation generators") {
  const SymplecticConvention conv(1);
  const FiniteRepSet reps = finite_reps(conv);
  // (Sigma_vec^{11})^e_f = -2i delta^1_f w^{1e}: only entry (e=2, f=1) is nonzero.
  CHECK(std::abs(reps.sigma_vec[0](1, 0) - cd(0, -2)) < 1e-15);
  CHECK(std::abs(reps.sigma_vec[0](0, 0)) == 0.0);
  CHECK((reps.sigma_vec[1] + reps.sigma_form[1]).norm() == 0.0);
}

TEST_CASE("rho is antisymmetric and vanishes for zero psi") {
  const FockRep rep = build_fock(1, 6);
  std::mt19937_64 rng(9);
  const Mat rho = rho_from_psi(rep, random_psi(rep, rng));
  CHECK((rho + rho.transpose()).norm() == 0.0);
  CHECK(rho_from_psi(rep, CMat::Zero(6, 6)).norm() == 0.0);
  CHECK_THROWS(rho_from_psi(rep, CMat::Zero(5, 5)));
}

TEST_CASE("intertwining residual is second order") {
  const FockRep rep = build_fock(1, 8);
  const IntertwineResult r = intertwine_check(rep, Mat::Identity(2, 2), 1e-3);
  CHECK(r.ratio == doctest::Approx(4.0).epsilon(0.05));
  CHECK(r.unitarity < 1e-12);
  Mat bad(2, 2);
  bad << 1, 2, 0, 1;
  CHECK_THROWS(intertwine_check(rep, bad, 1e-3));
  CHECK_THROWS(intertwine_check(rep, Mat::Identity(2, 2), 0.1));
}
