#include "doctest.h"

#include "forge/determinants.hpp"
#include "forge/errors.hpp"

#include <cmath>
#include <numbers>

using namespace forge;
using namespace forge::det;

TEST_CASE("theta values") {
  CHECK(theta_value(ThetaConvention::Zero) == 0.0);
  CHECK(theta_value(ThetaConvention::Half) == 0.5);
  CHECK(theta_value(ThetaConvention::One) == 1.0);
}

TEST_CASE("zero coupling gives unit determinant") {
  const TimeGrid g = constant_grid(Mat::Zero(2, 2), 1.0, 10);
  for (Sign s : {Sign::Minus, Sign::Plus}) CHECK(discrete_determinant(g, s, ThetaConvention::Half) == 1.0);
}

TEST_CASE("constant scalar coupling matches the power formula") {
  Mat g = Mat::Zero(2, 2);
  g(0, 0) = 0.6;
  const int m = 7;
  const TimeGrid grid = constant_grid(g, 0.7, m);
  const double dt = 0.1;
  CHECK(discrete_determinant(grid, Sign::Minus, ThetaConvention::Half) ==
        doctest::Approx(std::pow(1 - 0.5 * dt * 0.6, m)));
  CHECK(discrete_determinant(grid, Sign::Plus, ThetaConvention::One) == doctest::Approx(std::pow(1 + dt * 0.6, m)));
  CHECK(closed_form(grid, Sign::Minus) == doctest::Approx(std::exp(-0.5 * 0.6 * 0.7)));
}

TEST_CASE("block and dense determinants agree") {
  const auto sys = dynamics::system_library("pendulum");
  Vec phi0(2);
  phi0 << 0.9, 0.2;
  const TimeGrid g = hamiltonian_grid(sys, phi0, 1.5, 8);
  for (Sign s : {Sign::Minus, Sign::Plus})
    for (ThetaConvention t : {ThetaConvention::Zero, ThetaConvention::Half, ThetaConvention::One})
      CHECK(discrete_determinant(g, s, t) == doctest::Approx(discrete_determinant_dense(g, s, t)).epsilon(1e-12));
}

TEST_CASE("singular grids are reported") {
  Mat g = Mat::Zero(2, 2);
  g(0, 0) = 2.0;
  // One step of dt = 1 at theta = 1/2 makes the diagonal block 1 - 1 = 0.
  const TimeGrid grid = constant_grid(g, 2.0, 2);
  CHECK_THROWS_AS(discrete_determinant(grid, Sign::Minus, ThetaConvention::Half), PreconditionError);
  CHECK_THROWS(constant_grid(g, 1.0, 1));
}

TEST_CASE("product identity deviation halves under refinement") {
  const auto sys = dynamics::system_library("harmonic");
  Vec phi0(2);
  phi0 << 1, 0;
  const RefinementResult r =
      product_identity_check([&](int m) { return hamiltonian_grid(sys, phi0, 1.0, m); }, 100, ThetaConvention::Half);
  CHECK(r.ratio == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("regulated Gaussian closed form") {
  Mat a(1, 1);
  a(0, 0) = 2.0;
  const double eps = 0.3;
  const auto v = gaussian_inverse_det(a, eps);
  CHECK(v.real() == doctest::Approx(2 * std::numbers::pi / std::sqrt(4 * eps * eps + 4.0)));
  CHECK(v.imag() == doctest::Approx(0.0));
  const auto id = gaussian_inverse_det(Mat::Identity(2, 2), 1e-6);
  CHECK(id.real() == doctest::Approx(4 * std::numbers::pi * std::numbers::pi).epsilon(1e-9));
  a(0, 0) = -1.0;
  CHECK_THROWS_AS(gaussian_inverse_det(a, eps), PreconditionError);
  CHECK_THROWS(gaussian_inverse_det(Mat::Identity(3, 3), eps));
}
