#include "checks.hpp"

#include "forge/determinants.hpp"
#include "forge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

namespace forge::suites {

using namespace det;

namespace {

Vec qp(PhaseOrdering ordering, double q, double p) {
  const SymplecticConvention conv(1, ordering);
  Vec v(2);
  v[conv.from_qp(0)] = q;
  v[conv.from_qp(1)] = p;
  return v;
}

Vec start(PhaseOrdering o, const std::string& name) {
  if (name == "harmonic") return qp(o, 1.0, 0.0);
  if (name == "inverted") return qp(o, 0.5, -0.3);
  if (name == "pendulum") return qp(o, 0.5, 0.0);
  return qp(o, 1.2, 0.0);
}

GridFactory hamiltonian_factory(const dynamics::HamiltonianSystem& sys, const Vec& phi0, double T) {
  return [sys, phi0, T](int m) { return hamiltonian_grid(sys, phi0, T, m); };
}

bool in_linear_band(double ratio) { return ratio >= 1.7 && ratio <= 2.5; }

Outcome product_identity(Context& ctx) {
  const PhaseOrdering o = ctx.config().ordering;
  bool ok = true;
  std::string detail;
  for (const auto& name : dynamics::library_names()) {
    const auto sys = dynamics::system_library(name, {}, o);
    for (double T : {1.0, 2.0}) {
      const GridFactory f = hamiltonian_factory(sys, start(o, name), T);
      const RefinementResult r = product_identity_check(f, 100, ThetaConvention::Half);
      ok = ok && in_linear_band(r.ratio);
      detail += fmt("%s T=%g dev %.2e ratio %.3f; ", name.c_str(), T, r.deviation, r.ratio);
      std::string path;
      if (T == 1.0 && ctx.csv_path("refinement_" + name + ".csv", path)) {
        std::ofstream os(path);
        write_refinement_csv(os, product_refinement_table(f, {50, 100, 200, 400, 800}, ThetaConvention::Half, T));
      }
    }
  }
  const TimeGrid zero = constant_grid(Mat::Zero(2, 2), 1.0, 50);
  const double p0 = discrete_determinant(zero, Sign::Minus, ThetaConvention::Half) *
                    discrete_determinant(zero, Sign::Plus, ThetaConvention::Half);
  ok = ok && p0 == 1.0;
  return exact(ok, detail + fmt("G'=0 product %.17g; ratios must lie in [1.7, 2.5]", p0));
}

Outcome causal_trivial(Context& ctx) {
  const PhaseOrdering o = ctx.config().ordering;
  bool ok = true;
  std::string detail;
  for (const auto& name : dynamics::library_names()) {
    const TimeGrid g = hamiltonian_grid(dynamics::system_library(name, {}, o), start(o, name), 1.0, 200);
    const double m = discrete_determinant(g, Sign::Minus, ThetaConvention::Zero);
    const double p = discrete_determinant(g, Sign::Plus, ThetaConvention::Zero);
    ok = ok && m == 1.0 && p == 1.0;
    detail += fmt("%s %.17g/%.17g; ", name.c_str(), m, p);
  }
  // Two midpoint steps with G' = diag(g, 0): each diagonal block gives 1 -+ dt g / 2.
  Mat gm = Mat::Zero(2, 2);
  gm(0, 0) = 0.8;
  const TimeGrid two = constant_grid(gm, 0.2, 2);
  const double m1 = discrete_determinant(two, Sign::Minus, ThetaConvention::Half);
  const double p1 = discrete_determinant(two, Sign::Plus, ThetaConvention::Half);
  const double lo = 1 - 0.5 * 0.1 * 0.8;
  const double hi = 1 + 0.5 * 0.1 * 0.8;
  const bool step_ok = std::abs(m1 - lo * lo) <= 1e-15 && std::abs(p1 - hi * hi) <= 1e-15;
  ok = ok && step_ok;
  // det(+; G') = det(-; -G').
  const TimeGrid g = hamiltonian_grid(dynamics::system_library("pendulum", {}, o), start(o, "pendulum"), 1.0, 50);
  TimeGrid neg = g;
  for (auto& m : neg.g) m = -m;
  const bool flip = discrete_determinant(g, Sign::Plus, ThetaConvention::Half) ==
                    discrete_determinant(neg, Sign::Minus, ThetaConvention::Half);
  ok = ok && flip;
  return exact(ok, detail + fmt("two steps %.6f/%.6f; sign flip %s", m1, p1, flip ? "exact" : "differs"));
}

Outcome causal_closed_form(Context& ctx) {
  const PhaseOrdering o = ctx.config().ordering;
  bool ok = true;
  std::string detail;
  for (const auto& name : dynamics::library_names()) {
    const GridFactory f = hamiltonian_factory(dynamics::system_library(name, {}, o), start(o, name), 1.0);
    for (Sign s : {Sign::Minus, Sign::Plus}) {
      const RefinementResult r = causal_closed_form_check(f, 100, s);
      ok = ok && in_linear_band(r.ratio);
      detail += fmt("%s%s dev %.2e ratio %.3f; ", name.c_str(), s == Sign::Minus ? "-" : "+", r.deviation, r.ratio);
    }
  }
  return exact(ok, detail + "Hamiltonian G' has zero trace so the target is 1");
}

Outcome synthetic_closed_form(Context& ctx) {
  Mat g = Mat::Zero(2, 2);
  g(0, 0) = 1.0;
  const TimeGrid grid = constant_grid(g, 1.0, 10000);
  const double m = discrete_determinant(grid, Sign::Minus, ThetaConvention::Half);
  const double p = discrete_determinant(grid, Sign::Plus, ThetaConvention::Half);
  const double em = std::abs(m - std::exp(-0.5)) / std::exp(-0.5);
  const double ep = std::abs(p - std::exp(0.5)) / std::exp(0.5);
  const RefinementResult r = causal_closed_form_check([&](int k) { return constant_grid(g, 1.0, k); }, 100, Sign::Minus);
  Outcome out = measured(std::max(em, ep), ctx.tol(0.01),
                         fmt("det(-) %.6f vs e^-1/2 %.6f, det(+) %.6f vs e^1/2 %.6f at M=1e4; refinement ratio %.3f",
                             m, std::exp(-0.5), p, std::exp(0.5), r.ratio));
  // (1 - dt/2)^M approaches e^{-1/2} at second order in dt.
  out.pass = out.pass && r.ratio >= 1.7;
  return out;
}

Outcome dense_cross_check(Context& ctx) {
  const PhaseOrdering o = ctx.config().ordering;
  double worst = 0.0;
  for (const auto& name : dynamics::library_names()) {
    const TimeGrid g = hamiltonian_grid(dynamics::system_library(name, {}, o), start(o, name), 2.0, 12);
    for (Sign s : {Sign::Minus, Sign::Plus})
      for (ThetaConvention t : {ThetaConvention::Zero, ThetaConvention::Half, ThetaConvention::One}) {
        const double a = discrete_determinant(g, s, t);
        const double b = discrete_determinant_dense(g, s, t);
        worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
      }
  }
  return measured(worst, ctx.tol(1e-12), "block product against dense LU, M=12, all signs and conventions");
}

Outcome trace_identity(Context& ctx) {
  const PhaseOrdering o = ctx.config().ordering;
  const Mat omega = SymplecticConvention(1, o).upper_matrix();
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  for (const auto& name : dynamics::library_names()) {
    const auto sys = dynamics::system_library(name, {}, o);
    for (int k = 0; k < 100; ++k) {
      Vec x(2);
      x << u(ctx.rng()), u(ctx.rng());
      worst = std::max(worst, std::abs((omega * sys.hessian(x)).trace()));
    }
  }
  return measured(worst, ctx.tol(1e-14), "max |tr(w K)| over 100 random points per system");
}

Outcome gaussian(Context& ctx) {
  double worst = 0.0;
  bool monotone = true;
  std::string detail;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::pair<std::string, Mat>> cases;
  Mat a1(1, 1);
  a1(0, 0) = 1.7;
  cases.emplace_back("d=1 a=1.7", a1);
  cases.emplace_back("d=2 identity", Mat::Identity(2, 2));
  Mat a2(2, 2);
  do {
    a2 << u(ctx.rng()), u(ctx.rng()), u(ctx.rng()), u(ctx.rng());
  } while (a2.determinant() < 0.2);
  cases.emplace_back("d=2 random", a2);
  for (const auto& [label, a] : cases) {
    const int d = static_cast<int>(a.rows());
    const double target = std::pow(2 * std::numbers::pi, d) / a.determinant();
    const double norm = a.norm();
    const double err = std::abs(gaussian_inverse_det(a, 1e-3 * norm) - target) / target;
    worst = std::max(worst, err);
    double prev = INFINITY;
    for (double s : {1e-1, 1e-2, 1e-3}) {
      const double e = std::abs(gaussian_inverse_det(a, s * norm) - target);
      monotone = monotone && e < prev;
      prev = e;
    }
    detail += fmt("%s rel err %.2e; ", label.c_str(), err);
  }
  // d = 1 closed form 2 pi / sqrt(4 eps^2 + a^2).
  const double eps = 0.05;
  const double closed = 2 * std::numbers::pi / std::sqrt(4 * eps * eps + 1.7 * 1.7);
  const double closed_err = std::abs(gaussian_inverse_det(a1, eps) - closed);
  Outcome out = measured(worst, ctx.tol(0.01),
                         detail + fmt("d=1 closed form diff %.1e; monotone in eps: %s", closed_err, monotone ? "yes" : "no"));
  out.pass = out.pass && monotone && closed_err <= 1e-12;
  return out;
}

Outcome gaussian_positivity(Context&) {
  int rejected = 0;
  Mat neg(2, 2);
  neg << 0, 1, 1, 0;
  Mat sing(2, 2);
  sing << 1, 2, 2, 4;
  Mat a1(1, 1);
  a1(0, 0) = -3;
  for (const Mat* m : {&neg, &sing, &a1}) {
    try {
      gaussian_inverse_det(*m, 1e-3);
    } catch (const PreconditionError&) {
      ++rejected;
    }
  }
  return exact(rejected == 3, fmt("%d/3 matrices with det <= 0 rejected", rejected));
}

}  // namespace

std::vector<CheckDef> determinant_checks() {
  return {
      {"determinants.product_identity", "determinants", "Eq. A3", product_identity},
      {"determinants.causal_trivial", "determinants", "Eq. A1", causal_trivial},
      {"determinants.causal_closed_form", "determinants", "Eq. A7", causal_closed_form},
      {"determinants.synthetic_closed_form", "determinants", "Eq. A7", synthetic_closed_form},
      {"determinants.dense_cross_check", "determinants", "Eq. A1", dense_cross_check},
      {"determinants.trace_identity", "determinants", "Eq. A8", trace_identity},
      {"determinants.gaussian_inverse_det", "determinants", "Eq. 2.5", gaussian},
      {"determinants.gaussian_positivity", "determinants", "Eq. 2.5", gaussian_positivity},
  };
}

}  // namespace forge::suites
