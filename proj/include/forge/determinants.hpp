#pragma once

// Discrete-time functional determinants of d/dt - G'(t) with the time
// derivative factored out, and the regulated Gaussian inverse determinant.

#include "forge/dynamics.hpp"

#include <complex>
#include <functional>
#include <iosfwd>
#include <vector>

namespace forge::det {

using dynamics::Mat;
using dynamics::Vec;

/// M steps of width dt with one matrix sample G'_j per step.
struct TimeGrid {
  double dt = 0.0;
  std::vector<Mat> g;
  int steps() const { return static_cast<int>(g.size()); }
};

/// Value of the step function at coincident times.
enum class ThetaConvention { Zero, Half, One };
double theta_value(ThetaConvention theta);

enum class Sign { Minus, Plus };

/// G'_j = w K(phi(t_j)), t_j = j T / M, j = 0..M-1, along the flow from phi0.
TimeGrid hamiltonian_grid(const dynamics::HamiltonianSystem& sys, const Vec& phi0, double T, int M);
/// The same constant matrix at every step.
TimeGrid constant_grid(const Mat& g, double T, int M);

/// det of the block matrix delta_jk I -+ dt w_jk G'_k (k <= j), w_jj = theta0,
/// w_jk = 1 below the diagonal. Throws PreconditionError when singular.
double discrete_determinant(const TimeGrid& grid, Sign sign, ThetaConvention theta);
/// Same value from the assembled dense matrix; intended for small grids.
double discrete_determinant_dense(const TimeGrid& grid, Sign sign, ThetaConvention theta);

using GridFactory = std::function<TimeGrid(int steps)>;

struct RefinementResult {
  double deviation = 0.0;       // at M steps
  double deviation_half = 0.0;  // at 2M steps
  double ratio = 0.0;           // deviation / deviation_half
  double value = 0.0;           // quantity at 2M steps
};

/// |det(-) det(+) - 1| at M and 2M steps.
RefinementResult product_identity_check(const GridFactory& grid_at, int M, ThetaConvention theta);

/// |det(sign) - exp(-+ 1/2 int tr G')| at M and 2M steps, midpoint convention.
RefinementResult causal_closed_form_check(const GridFactory& grid_at, int M, Sign sign);

/// exp(-+ 1/2 sum_j dt tr G'_j), the continuum target of discrete_determinant.
double closed_form(const TimeGrid& grid, Sign sign);

struct RefinementRow {
  double dt;
  double deviation;
};
std::vector<RefinementRow> product_refinement_table(const GridFactory& grid_at,
                                                    const std::vector<int>& steps,
                                                    ThetaConvention theta, double T);
void write_refinement_csv(std::ostream& os, const std::vector<RefinementRow>& rows);

/// Regulated integral of exp(i x^T A y - eps(|x|^2 + |y|^2)) over R^{2d},
/// (2 pi)^d / sqrt(det(4 eps^2 I + A A^T)). Requires d in {1, 2}, det A > 0.
std::complex<double> gaussian_inverse_det(const Mat& a, double eps);

}  // namespace forge::det
