#include "forge/determinants.hpp"

#include "forge/errors.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace forge::det {

namespace {

double sign_factor(Sign s) { return s == Sign::Minus ? -1.0 : 1.0; }

void check_grid(const TimeGrid& grid) {
  if (grid.steps() < 2) throw PreconditionError("time grid needs at least two steps");
  if (!(grid.dt > 0)) throw PreconditionError("time step must be positive");
  const auto d = grid.g.front().rows();
  for (const Mat& g : grid.g)
    if (g.rows() != d || g.cols() != d) throw ConfigError("grid samples differ in dimension");
}

[[noreturn]] void singular(double dt) {
  std::ostringstream os;
  os << "discrete operator is singular at dt = " << dt;
  throw PreconditionError(os.str());
}

}  // namespace

double theta_value(ThetaConvention theta) {
  switch (theta) {
    case ThetaConvention::Zero: return 0.0;
    case ThetaConvention::Half: return 0.5;
    case ThetaConvention::One: return 1.0;
  }
  return 0.5;
}

TimeGrid hamiltonian_grid(const dynamics::HamiltonianSystem& sys, const Vec& phi0, double T, int M) {
  if (M < 2) throw PreconditionError("time grid needs at least two steps");
  const Mat omega = SymplecticConvention(sys.n, sys.ordering).upper_matrix();
  const dynamics::Trajectory traj =
      dynamics::integrate(sys, {phi0, Vec::Zero(sys.dim()), Vec::Zero(sys.dim()), 0.0}, T, T / M);
  TimeGrid grid;
  grid.dt = traj.dt;
  for (int j = 0; j < M; ++j) grid.g.push_back(omega * sys.hessian(traj.states[j].phi));
  return grid;
}

TimeGrid constant_grid(const Mat& g, double T, int M) {
  if (M < 2) throw PreconditionError("time grid needs at least two steps");
  if (!(T > 0)) throw PreconditionError("T must be positive");
  TimeGrid grid;
  grid.dt = T / M;
  grid.g.assign(static_cast<std::size_t>(M), g);
  return grid;
}

double discrete_determinant(const TimeGrid& grid, Sign sign, ThetaConvention theta) {
  check_grid(grid);
  // Block lower triangular: only the diagonal blocks contribute.
  const double c = sign_factor(sign) * theta_value(theta) * grid.dt;
  const auto d = grid.g.front().rows();
  double log_abs = 0.0;
  int negatives = 0;
  for (const Mat& g : grid.g) {
    const double v = (Mat::Identity(d, d) + c * g).determinant();
    if (v == 0.0 || !std::isfinite(v)) singular(grid.dt);
    log_abs += std::log(std::abs(v));
    if (v < 0) ++negatives;
  }
  return (negatives % 2 ? -1.0 : 1.0) * std::exp(log_abs);
}

double discrete_determinant_dense(const TimeGrid& grid, Sign sign, ThetaConvention theta) {
  check_grid(grid);
  const auto d = grid.g.front().rows();
  const int m = grid.steps();
  const double s = sign_factor(sign) * grid.dt;
  Mat big = Mat::Identity(m * d, m * d);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k <= j; ++k) {
      const double w = k == j ? theta_value(theta) : 1.0;
      big.block(j * d, k * d, d, d) += (s * w) * grid.g[k];
    }
  Eigen::FullPivLU<Mat> lu(big);
  if (!lu.isInvertible()) singular(grid.dt);
  return lu.determinant();
}

double closed_form(const TimeGrid& grid, Sign sign) {
  double integral = 0.0;
  for (const Mat& g : grid.g) integral += grid.dt * g.trace();
  return std::exp(0.5 * sign_factor(sign) * integral);
}

RefinementResult product_identity_check(const GridFactory& grid_at, int M, ThetaConvention theta) {
  auto deviation = [&](int steps, double* value) {
    const TimeGrid g = grid_at(steps);
    const double p = discrete_determinant(g, Sign::Minus, theta) * discrete_determinant(g, Sign::Plus, theta);
    if (value) *value = p;
    return std::abs(p - 1.0);
  };
  RefinementResult r;
  r.deviation = deviation(M, nullptr);
  r.deviation_half = deviation(2 * M, &r.value);
  r.ratio = r.deviation_half > 0 ? r.deviation / r.deviation_half : 0.0;
  return r;
}

RefinementResult causal_closed_form_check(const GridFactory& grid_at, int M, Sign sign) {
  auto deviation = [&](int steps, double* value) {
    const TimeGrid g = grid_at(steps);
    const double v = discrete_determinant(g, sign, ThetaConvention::Half);
    if (value) *value = v;
    return std::abs(v - closed_form(g, sign));
  };
  RefinementResult r;
  r.deviation = deviation(M, nullptr);
  r.deviation_half = deviation(2 * M, &r.value);
  r.ratio = r.deviation_half > 0 ? r.deviation / r.deviation_half : 0.0;
  return r;
}

std::vector<RefinementRow> product_refinement_table(const GridFactory& grid_at,
                                                    const std::vector<int>& steps,
                                                    ThetaConvention theta, double T) {
  std::vector<RefinementRow> rows;
  for (int m : steps) {
    const TimeGrid g = grid_at(m);
    const double p = discrete_determinant(g, Sign::Minus, theta) * discrete_determinant(g, Sign::Plus, theta);
    rows.push_back({T / m, std::abs(p - 1.0)});
  }
  return rows;
}

void write_refinement_csv(std::ostream& os, const std::vector<RefinementRow>& rows) {
  os << "dt,deviation\n" << std::setprecision(17);
  for (const auto& r : rows) os << r.dt << "," << r.deviation << "\n";
}

std::complex<double> gaussian_inverse_det(const Mat& a, double eps) {
  const auto d = a.rows();
  if (a.cols() != d || (d != 1 && d != 2)) throw PreconditionError("A must be 1x1 or 2x2");
  if (!(eps > 0)) throw PreconditionError("regulator eps must be positive");
  if (!(a.determinant() > 0)) throw PreconditionError("A must have positive determinant");
  const Mat q = 4 * eps * eps * Mat::Identity(d, d) + a * a.transpose();
  const double pref = std::pow(2 * std::numbers::pi, static_cast<double>(d));
  return {pref / std::sqrt(q.determinant()), 0.0};
}

}  // namespace forge::det
