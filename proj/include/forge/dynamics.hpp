#pragma once

#include "forge/convention.hpp"

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace forge::dynamics {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// A Hamiltonian with closed-form derivatives up to third order, expressed in
/// the coordinates of the convention it was built for.
struct HamiltonianSystem {
  std::string name;
  int n = 1;
  PhaseOrdering ordering = PhaseOrdering::QP;
  std::function<double(const Vec&)> energy;
  std::function<Vec(const Vec&)> gradient;
  std::function<Mat(const Vec&)> hessian;
  /// Flat d^3 array, entry (a, b, c) at (a * d + b) * d + c.
  std::function<std::vector<double>(const Vec&)> third;

  int dim() const { return 2 * n; }
};

struct SystemParams {
  double omega0 = 1.0;  // harmonic frequency
  double k = 1.0;       // inverted-oscillator rate
};

/// harmonic, inverted, pendulum, double_well; all one degree of freedom.
HamiltonianSystem system_library(const std::string& name, const SystemParams& params = {},
                                 PhaseOrdering ordering = PhaseOrdering::QP);
std::vector<std::string> library_names();

/// Hamiltonian identically zero, used as a trivial flow.
HamiltonianSystem null_system(int n, PhaseOrdering ordering = PhaseOrdering::QP);

struct ExtendedState {
  Vec phi;
  Vec pi;
  Vec xi;
  double t = 0.0;
};

struct Trajectory {
  std::vector<ExtendedState> states;
  double dt = 0.0;
  std::string method = "rk4";
};

/// Number of fixed steps covering [0, T]: T/dt when that is an integer (to
/// 1e-9 relative), otherwise ceil(T/dt) with the step shrunk to T/steps.
int step_count(double T, double dt);

/// Joint RK4 for phi' = w grad H, pi' = (wK) pi, xi' = -(wK)^T xi.
Trajectory integrate(const HamiltonianSystem& sys, const ExtendedState& s0, double T, double dt);

/// Final state only, without storing the path.
ExtendedState integrate_final(const HamiltonianSystem& sys, const ExtendedState& s0, double T,
                              double dt);

/// d phi(T) / d phi(0) from the matrix variational equation T' = (wK) T.
Mat tangent_map(const HamiltonianSystem& sys, const Vec& phi0, double T, double dt);

struct TransportResult {
  double pi_error = 0.0;       // relative, |pi(T) - M pi0| / |M pi0|
  double xi_error = 0.0;       // relative, |xi(T) - M^{-T} xi0| / |M^{-T} xi0|
  double pairing_drift = 0.0;  // max_t |xi.pi(t) - xi.pi(0)|
  double symplectic_error = 0.0;
};
TransportResult transport_check(const HamiltonianSystem& sys, const ExtendedState& s0, double T,
                                double dt);

struct DiagramResult {
  double residual = 0.0;       // at eps
  double residual_half = 0.0;  // at eps / 2
  double ratio = 0.0;          // residual / residual_half, 0 if both vanish
};
/// |flow(phi0 + eps pi0) - (flow(phi0) + eps pi(T))| at eps and eps/2.
DiagramResult brs_diagram_check(const HamiltonianSystem& sys, const Vec& phi0, const Vec& pi0,
                                double T, double dt, double eps);

/// Least-squares slope of log|pi(t)| over [t0, t1].
double growth_rate(const HamiltonianSystem& sys, const Vec& phi0, const Vec& pi0, double t0,
                   double t1, double dt);

struct DerivativeCheck {
  double gradient = 0.0;
  double hessian = 0.0;
  double third = 0.0;
  double hessian_asymmetry = 0.0;
};
/// Max relative deviation of analytic derivatives from central differences
/// at random points in [-2, 2]^{2n}.
DerivativeCheck derivative_check(const HamiltonianSystem& sys, std::mt19937_64& rng, int points,
                                 double step = 1e-5);

/// One explicit double jump phi -> phi + dt w grad H against one RK4 step.
double double_jump_residual(const HamiltonianSystem& sys, const Vec& phi0, double dt);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace forge::dynamics
