#pragma once

// Truncated number-basis representation of the symplectic Clifford algebra,
// the metaplectic generators built from it, spinor dynamics along a
// Hamiltonian flow, and the finite vector/form representations of sp(2N).

#include "forge/convention.hpp"
#include "forge/dynamics.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <random>
#include <span>
#include <vector>

namespace forge::meta {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using dynamics::Mat;
using dynamics::Vec;

/// x^k, p^k on D levels per mode, N modes, hbar = 1. Basis index is
/// sum_k level_k D^(N-1-k).
struct FockRep {
  int N = 1;
  int D = 4;
  PhaseOrdering ordering = PhaseOrdering::QP;
  std::vector<CMat> x;
  std::vector<CMat> p;
  std::vector<CMat> gamma;  // sqrt(2) phi^a, phi = (x, p) or (p, x)
  std::vector<CMat> sigma;  // sigma[a * 2N + b]

  int size() const;
  int dim() const { return 2 * N; }
  SymplecticConvention convention() const { return SymplecticConvention(N, ordering); }
  const CMat& sigma_at(int a, int b) const { return sigma[a * dim() + b]; }
  /// Diagonal projector keeping states whose every mode sits below level D - drop.
  CMat projector(int drop) const;
  /// K_ab Sigma^{ab} for a symmetric K in this representation's ordering.
  CMat k_sigma(const Mat& k) const;
};

FockRep build_fock(int N, int D, PhaseOrdering ordering = PhaseOrdering::QP);

/// max_{a,b} |P([g^a, g^b] - 2i w^{ab}) P|, P dropping the top level.
double clifford_error(const FockRep& rep);
/// max |P([Sigma^{ab}, g^d] - i(w^{ad} g^b + w^{bd} g^a)) P|, top two levels dropped.
double sigma_gamma_error(const FockRep& rep);
/// max |X - X^dagger| over all gamma and Sigma.
double hermiticity_error(const FockRep& rep);

/// exp(-(i/2) eps K_ab Sigma^{ab}) through the Hermitian eigendecomposition.
CMat metaplectic_operator(const FockRep& rep, const Mat& k, double eps);
/// I + eps w K, the vector-representation image of the same generator.
Mat symplectic_vector(const SymplecticConvention& conv, const Mat& k, double eps);

struct IntertwineResult {
  double residual = 0.0;       // at eps
  double residual_half = 0.0;  // at eps / 2
  double ratio = 0.0;
  double unitarity = 0.0;      // |P (M^dagger M - I) P| at eps
  double symplectic_residual = 0.0;       // |S^T w S - w| at eps
  double symplectic_residual_half = 0.0;  // at eps / 2
};
IntertwineResult intertwine_check(const FockRep& rep, const Mat& k, double eps);

struct SpinorRun {
  dynamics::Trajectory flow;  // phi only is meaningful; pi and xi are zero
  std::vector<CVec> eta;      // one per stored time
  double norm_drift = 0.0;
};
/// Joint RK4 for phi' = w grad H and eta' = -(i/2) K_ab(phi) Sigma^{ab} eta.
SpinorRun integrate_spinor(const FockRep& rep, const dynamics::HamiltonianSystem& sys,
                           const Vec& phi0, const CVec& eta0, double T, double dt);

/// P^a = eta^dagger g^a eta.
Vec bilinear(const FockRep& rep, const CVec& eta);

struct JacobiBilinearResult {
  double max_relative = 0.0;  // max_t |P_spinor - P_jacobi| / |P_jacobi|
  double max_absolute = 0.0;
  double growth_rate = 0.0;   // least-squares slope of log|P_spinor| over [0, T]
  double norm_drift = 0.0;
  Vec p0;
};
JacobiBilinearResult jacobi_bilinear_check(const FockRep& rep, const dynamics::HamiltonianSystem& sys,
                                           const Vec& phi0, const CVec& eta0, double T, double dt);

/// Normalised coherent state alpha per mode, truncated to D levels.
CVec coherent_state(const FockRep& rep, std::span<const std::complex<double>> alpha);
CVec ground_state(const FockRep& rep);

/// Antisymmetric p-particle (Slater) lift of a one-body operator on d modes.
CMat slater_lift(const CMat& one_body, int particles);

struct SvhResult {
  double meta_error = 0.0;  // |L - L^dagger| for the lifted (1/2) K Sigma_meta block
  double vec_error = 0.0;   // same for the lifted (1/2) K Sigma_vec
};
/// d leading Fock levels of a one-mode representation, p particles. The
/// vector-representation contrast uses K in the convention `vec_conv`.
SvhResult svh_hermiticity_check(const FockRep& rep, const Mat& k_meta, int d, int particles,
                                const SymplecticConvention& vec_conv, const Mat& k_vec);

/// Finite vector and form representations: sigma_vec[a*2n+b] is the 2n x 2n
/// matrix (Sigma_vec^{ab})^e_f with row e, column f.
struct FiniteRepSet {
  int n = 1;
  std::vector<CMat> sigma_vec;
  std::vector<CMat> sigma_form;
};
FiniteRepSet finite_reps(const SymplecticConvention& conv);
/// (1/2) K_ab Sigma^{ab} for one of the finite sets.
CMat finite_k_sigma(const FiniteRepSet& reps, const std::vector<CMat>& sigma, const Mat& k);

/// rho_ab = 1/2 tr(psi^dagger g_a psi g_b^T) - (a <-> b), g_a = w_{ab} g^b.
Mat rho_from_psi(const FockRep& rep, const CMat& psi);

struct RhoTransformResult {
  double residual = 0.0;
  double residual_half = 0.0;
  double ratio = 0.0;
  double rho_norm = 0.0;
};
/// psi -> M psi M^T against rho -> S^T rho S with S = I - eps w K.
RhoTransformResult rho_transform_check(const FockRep& rep, const CMat& psi, const Mat& k, double eps);

/// Random complex psi supported on levels below D - 4 in every mode.
CMat random_psi(const FockRep& rep, std::mt19937_64& rng);
/// Random symmetric matrix with entries in [-1, 1].
Mat random_symmetric(int d, std::mt19937_64& rng);

/// Row-major "re,im" pairs, one matrix row per line.
void write_matrix_csv(std::ostream& os, const CMat& m);

}  // namespace forge::meta
