#include "checks.hpp"

#include "forge/metaplectic.hpp"
#include "forge/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>

namespace forge::suites {

using namespace meta;
using cd = std::complex<double>;

namespace {

double max_abs(const CMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Vec qp(PhaseOrdering ordering, double q, double p) {
  const SymplecticConvention conv(1, ordering);
  Vec v(2);
  v[conv.from_qp(0)] = q;
  v[conv.from_qp(1)] = p;
  return v;
}

CVec coherent(const FockRep& rep) {
  const std::vector<cd> alpha(rep.N, cd(0.5, 0.5));
  return coherent_state(rep, alpha);
}

/// Records the worst of several measured quantities and any hard failures.
struct Worst {
  double value = 0.0;
  bool hard_fail = false;
  std::string detail;
  void add(double v, const std::string& label) {
    value = std::max(value, v);
    detail += fmt("%s %.1e; ", label.c_str(), v);
  }
  void require(bool ok, const std::string& label) {
    if (!ok) {
      hard_fail = true;
      detail += label + " FAILED; ";
    }
  }
  Outcome outcome(double tol) const {
    Outcome o = measured(value, tol, detail);
    o.pass = o.pass && !hard_fail;
    return o;
  }
};

Outcome fock_heisenberg(Context& ctx) {
  Worst w;
  const FockRep r4 = build_fock(1, 4, ctx.config().ordering);
  w.add(std::abs(r4.x[0](0, 1) - 1 / std::numbers::sqrt2), "x_01 - 1/sqrt2");
  const CMat x2 = r4.x[0] * r4.x[0];
  w.add(std::abs(x2(0, 0) - 0.5), "<0|x^2|0> - 1/2");
  for (auto [n, d] : {std::pair{1, 8}, std::pair{2, 6}}) {
    const FockRep rep = build_fock(n, d, ctx.config().ordering);
    const CMat p1 = rep.projector(1);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        const CMat c = rep.x[k] * rep.p[j] - rep.p[j] * rep.x[k];
        const CMat want = (k == j ? cd(0, 1) : cd(0)) * p1;
        w.add(max_abs(p1 * c * p1 - want), fmt("N=%d D=%d [x%d,p%d]", n, d, k + 1, j + 1));
      }
    w.add(std::max(max_abs(rep.x[0] - rep.x[0].adjoint()), max_abs(rep.p[0] - rep.p[0].adjoint())),
          fmt("N=%d D=%d x,p hermiticity", n, d));
  }
  return w.outcome(ctx.tol(1e-14));
}

Outcome clifford(Context& ctx) {
  Worst w;
  for (auto [n, d] : {std::pair{1, 8}, std::pair{2, 6}}) {
    const FockRep rep = build_fock(n, d, ctx.config().ordering);
    w.add(clifford_error(rep), fmt("N=%d D=%d", n, d));
    // Independent oracle for the single pair at N = 1.
    if (n == 1) {
      const CMat p1 = rep.projector(1);
      const CMat c = rep.gamma[0] * rep.gamma[1] - rep.gamma[1] * rep.gamma[0];
      const cd want = cd(0, 2) * double(rep.convention().upper(0, 1));
      w.add(max_abs(p1 * c * p1 - want * p1), "N=1 pair (1,2)");
      w.require(max_abs(rep.gamma[0] * rep.gamma[0] - rep.gamma[0] * rep.gamma[0]) == 0.0, "a=b");
    }
    std::string path;
    if (ctx.csv_path(fmt("gamma_N%d_D%d.csv", n, d), path)) {
      std::ofstream os(path);
      for (const auto& g : rep.gamma) write_matrix_csv(os, g);
    }
    if (ctx.csv_path(fmt("sigma_N%d_D%d.csv", n, d), path)) {
      std::ofstream os(path);
      for (const auto& s : rep.sigma) write_matrix_csv(os, s);
    }
  }
  return w.outcome(ctx.tol(1e-12));
}

Outcome sigma_gamma(Context& ctx) {
  Worst w;
  for (auto [n, d] : {std::pair{1, 8}, std::pair{2, 6}}) {
    const FockRep rep = build_fock(n, d, ctx.config().ordering);
    w.add(sigma_gamma_error(rep), fmt("N=%d D=%d", n, d));
  }
  return w.outcome(ctx.tol(1e-12));
}

Outcome sigma_hermiticity(Context& ctx) {
  Worst w;
  for (auto [n, d] : {std::pair{1, 8}, std::pair{2, 6}}) {
    const FockRep rep = build_fock(n, d, ctx.config().ordering);
    w.add(hermiticity_error(rep), fmt("N=%d D=%d", n, d));
    double sym = 0.0;
    for (int a = 0; a < rep.dim(); ++a)
      for (int b = 0; b < rep.dim(); ++b) sym = std::max(sym, max_abs(rep.sigma_at(a, b) - rep.sigma_at(b, a)));
    w.add(sym, fmt("N=%d D=%d Sigma^{ab} - Sigma^{ba}", n, d));
  }
  return w.outcome(ctx.tol(1e-14));
}

Outcome intertwine(Context& ctx) {
  Worst w;
  const double eps = 1e-3;
  for (auto [n, d] : {std::pair{1, 8}, std::pair{2, 6}}) {
    const FockRep rep = build_fock(n, d, ctx.config().ordering);
    std::vector<std::pair<std::string, Mat>> ks{{"K=I", Mat::Identity(2 * n, 2 * n)},
                                                {"random K", random_symmetric(2 * n, ctx.rng())}};
    for (const auto& [label, k] : ks) {
      const IntertwineResult r = intertwine_check(rep, k, eps);
      w.add(std::abs(r.ratio - 4.0), fmt("N=%d D=%d %s residual %.2e ratio-4", n, d, label.c_str(), r.residual));
      const double sratio = r.symplectic_residual / r.symplectic_residual_half;
      w.require(std::abs(sratio - 4.0) <= 0.5, fmt("S^T w S - w quadratic (ratio %.3f)", sratio));
    }
    // K = 0: M is the identity and the relation is exact.
    const CMat m0 = metaplectic_operator(rep, Mat::Zero(2 * n, 2 * n), eps);
    w.require(max_abs(m0 - CMat::Identity(rep.size(), rep.size())) == 0.0, "K=0 gives M=I");
  }
  return w.outcome(ctx.tol(0.5));
}

Outcome unitarity(Context& ctx) {
  Worst w;
  for (auto [n, d] : {std::pair{1, 8}, std::pair{2, 6}}) {
    const FockRep rep = build_fock(n, d, ctx.config().ordering);
    for (int k = 0; k < 3; ++k) {
      const IntertwineResult r = intertwine_check(rep, random_symmetric(2 * n, ctx.rng()), 1e-3);
      w.add(r.unitarity, fmt("N=%d D=%d trial %d", n, d, k));
    }
    // Full-space unitarity of the exponential at a finite parameter.
    const CMat m = metaplectic_operator(rep, random_symmetric(2 * n, ctx.rng()), 0.7);
    w.add(max_abs(m.adjoint() * m - CMat::Identity(rep.size(), rep.size())), fmt("N=%d D=%d eps=0.7", n, d));
  }
  return w.outcome(ctx.tol(1e-10));
}

Outcome spinor_constant_oracle(Context& ctx) {
  const PhaseOrdering o = ctx.config().ordering;
  const FockRep rep = build_fock(1, 16, o);
  const auto sys = dynamics::system_library("harmonic", {}, o);
  const CVec eta0 = coherent(rep);
  const double T = 1.0;
  const SpinorRun run = integrate_spinor(rep, sys, qp(o, 1, 0), eta0, T, ctx.config().dt);
  const CMat m = metaplectic_operator(rep, Mat::Identity(2, 2), T);
  Worst w;
  w.add((run.eta.back() - m * eta0).norm(), "harmonic T=1 against exp");
  // Zero Hamiltonian: the spinor does not move.
  const SpinorRun still = integrate_spinor(rep, dynamics::null_system(1, o), qp(o, 1, 0), eta0, T, ctx.config().dt);
  w.require((still.eta.back() - eta0).norm() == 0.0, "H=0 leaves eta fixed");
  return w.outcome(ctx.tol(1e-8));
}

Outcome spinor_norm(Context& ctx) {
  const PhaseOrdering o = ctx.config().ordering;
  const FockRep rep = build_fock(1, 16, o);
  Worst w;
  for (const char* name : {"harmonic", "pendulum"}) {
    const auto sys = dynamics::system_library(name, {}, o);
    const SpinorRun run = integrate_spinor(rep, sys, qp(o, 1, 0.5), coherent(rep), ctx.config().T, ctx.config().dt);
    w.add(run.norm_drift, fmt("%s T=%g", name, ctx.config().T));
  }
  return w.outcome(ctx.tol(1e-9));
}

/// Truncation and horizon per system. The harmonic flow keeps the spinor in
/// low levels for a full period; the other flows squeeze it and need a
/// larger space over a shorter window.
std::pair<int, double> jacobi_window(const std::string& name) {
  if (name == "harmonic") return {16, 2 * std::numbers::pi};
  return {96, 1.0};
}

std::pair<double, double> jacobi_start(const std::string& name) {
  if (name == "harmonic") return {1.0, 0.0};
  if (name == "inverted") return {0.5, -0.3};
  if (name == "pendulum") return {1.0, 0.5};
  return {1.2, 0.0};
}

Outcome jacobi_bilinear(Context& ctx) {
  const PhaseOrdering o = ctx.config().ordering;
  Worst w;
  for (const auto& name : dynamics::library_names()) {
    const auto [d, T] = jacobi_window(name);
    const auto [q, p] = jacobi_start(name);
    const FockRep rep = build_fock(1, d, o);
    const JacobiBilinearResult r =
        jacobi_bilinear_check(rep, dynamics::system_library(name, {}, o), qp(o, q, p), coherent(rep), T, ctx.config().dt);
    w.add(r.max_relative, fmt("%s D=%d T=%g", name.c_str(), d, T));
  }
  return w.outcome(ctx.tol(1e-6));
}

Outcome jacobi_growth(Context& ctx) {
  const PhaseOrdering o = ctx.config().ordering;
  const auto [d, T] = jacobi_window("inverted");
  const FockRep rep = build_fock(1, d, o);
  const JacobiBilinearResult r = jacobi_bilinear_check(rep, dynamics::system_library("inverted", {1.0, 1.0}, o),
                                                       qp(o, 0.5, -0.3), coherent(rep), T, ctx.config().dt);
  // P(0) = (1, 1) in (q, p) lies on the unstable direction of H = (p^2 - q^2)/2.
  return measured(std::abs(r.growth_rate - 1.0), ctx.tol(0.01),
                  fmt("spinor bilinear growth rate %.5f for k=1", r.growth_rate));
}

Outcome jacobi_zero_field(Context& ctx) {
  const PhaseOrdering o = ctx.config().ordering;
  Worst w;
  for (const char* name : {"harmonic", "inverted"}) {
    const FockRep rep = build_fock(1, 32, o);
    const auto sys = dynamics::system_library(name, {}, o);
    const SpinorRun run = integrate_spinor(rep, sys, qp(o, 0.5, 0.2), ground_state(rep), 1.0, ctx.config().dt);
    double worst = 0.0;
    for (const auto& eta : run.eta) worst = std::max(worst, bilinear(rep, eta).norm());
    w.add(worst, fmt("%s max |P(t)|", name));
  }
  return w.outcome(ctx.tol(1e-9));
}

Outcome svh_hermiticity(Context& ctx) {
  const PhaseOrdering o = ctx.config().ordering;
  const FockRep rep = build_fock(1, 8, o);
  const SymplecticConvention conv1(1, o);
  Worst w;
  double witness = 0.0;
  for (int p : {1, 2}) {
    for (int k = 0; k < 3; ++k) {
      const Mat km = random_symmetric(2, ctx.rng());
      const Mat kv = random_symmetric(2, ctx.rng());
      const SvhResult r = svh_hermiticity_check(rep, km, 4, p, conv1, kv);
      w.add(r.meta_error, fmt("p=%d trial %d", p, k));
      witness = std::max(witness, r.vec_error);
    }
  }
  // p = 1 lift is the one-body block itself.
  const Mat km = Mat::Identity(2, 2);
  const CMat block = 0.5 * rep.k_sigma(km).topLeftCorner(4, 4);
  w.require(max_abs(slater_lift(block, 1) - block) == 0.0, "p=1 lift equals the block");
  w.detail += fmt("vector-representation witness %.3f", witness);
  Outcome out = w.outcome(ctx.tol(1e-12));
  out.pass = out.pass && witness > 1e-3;
  return out;
}

Outcome cpi_witness(Context& ctx) {
  const PhaseOrdering o = ctx.config().ordering;
  const FockRep rep = build_fock(1, 8, o);
  const SymplecticConvention conv1(1, o);
  double witness = 0.0;
  double meta = 0.0;
  for (int k = 0; k < ctx.config().trials; ++k) {
    const SvhResult r = svh_hermiticity_check(rep, random_symmetric(2, ctx.rng()), 4, 1, conv1,
                                              random_symmetric(2, ctx.rng()));
    witness = std::max(witness, r.vec_error);
    meta = std::max(meta, r.meta_error);
  }
  return exact(witness > 1e-3 && meta <= 1e-12,
               fmt("max |A - A^dagger| for the vector lift %.3f (want > 1e-3), metaplectic lift %.1e", witness, meta));
}

Outcome finite_reps_check(Context& ctx) {
  Worst w;
  for (int n = 1; n <= ctx.config().n; ++n) {
    const SymplecticConvention conv(n, ctx.config().ordering);
    const FiniteRepSet reps = finite_reps(conv);
    const int d = 2 * n;
    double sum = 0.0;
    for (std::size_t i = 0; i < reps.sigma_vec.size(); ++i)
      sum = std::max(sum, max_abs(reps.sigma_vec[i] + reps.sigma_form[i]));
    w.require(sum == 0.0, fmt("n=%d Sigma_form + Sigma_vec = 0", n));
    // (1/2) K Sigma_vec is i w K for every symmetric K.
    const Mat k = random_symmetric(d, ctx.rng());
    const CMat want = cd(0, 1) * (conv.upper_matrix() * k).cast<cd>();
    w.add(max_abs(finite_k_sigma(reps, reps.sigma_vec, k) - want), fmt("n=%d K Sigma_vec/2 - i w K", n));
  }
  // n = 1 diagonal entry: (Sigma_vec^{11})^e_f = -2i delta^1_f w^{1e}.
  const SymplecticConvention c1(1, ctx.config().ordering);
  const FiniteRepSet r1 = finite_reps(c1);
  for (int e = 0; e < 2; ++e)
    for (int f = 0; f < 2; ++f) {
      const cd want = f == 0 ? cd(0, -2) * double(c1.upper(0, e)) : cd(0);
      w.add(std::abs(r1.sigma_vec[0](e, f) - want), fmt("Sigma_vec^{11} (%d,%d)", e + 1, f + 1));
    }
  return w.outcome(ctx.tol(1e-15));
}

Outcome finite_reps_symplectic(Context& ctx) {
  Worst w;
  for (int n = 1; n <= ctx.config().n; ++n) {
    const SymplecticConvention conv(n, ctx.config().ordering);
    const FiniteRepSet reps = finite_reps(conv);
    const Mat omega = conv.upper_matrix();
    const Mat k = random_symmetric(2 * n, ctx.rng());
    const Mat id = Mat::Identity(2 * n, 2 * n);
    // S = I - (i/2) eps K Sigma for vectors (I + eps w K) and forms (I - eps w K).
    auto s_of = [&](const std::vector<CMat>& sigma, double eps) -> Mat {
      const CMat s = CMat::Identity(2 * n, 2 * n) - cd(0, 0.5) * eps * (2.0 * finite_k_sigma(reps, sigma, k));
      return s.real();
    };
    for (auto [label, sigma, sign] : {std::tuple{"vector", &reps.sigma_vec, 1.0}, std::tuple{"form", &reps.sigma_form, -1.0}}) {
      const double eps = 1e-3;
      const Mat s = s_of(*sigma, eps);
      w.add((s - (id + sign * eps * omega * k)).cwiseAbs().maxCoeff(), fmt("n=%d %s S against I %+g eps w K", n, label, sign));
      const double r1 = (s.transpose() * omega * s - omega).norm();
      const Mat sh = s_of(*sigma, eps / 2);
      const double r2 = (sh.transpose() * omega * sh - omega).norm();
      w.require(std::abs(r1 / r2 - 4.0) <= 0.5, fmt("n=%d %s S^T w S - w ratio %.3f", n, label, r1 / r2));
    }
  }
  return w.outcome(ctx.tol(1e-14));
}

Outcome finite_lie_consistency(Context& ctx) {
  int total = 0;
  int failed = 0;
  for (int n = 1; n <= ctx.config().n; ++n) {
    const SymplecticConvention conv(n, ctx.config().ordering);
    const FiniteRepSet reps = finite_reps(conv);
    const int d = 2 * n;
    // Sigma_vec is i times an integer matrix; recover the integers exactly.
    std::vector<std::vector<int>> s(d * d, std::vector<int>(d * d));
    for (int ab = 0; ab < d * d; ++ab)
      for (int e = 0; e < d; ++e)
        for (int f = 0; f < d; ++f) s[ab][e * d + f] = static_cast<int>(std::lround(reps.sigma_vec[ab](e, f).imag()));
    for (int k = 0; k < ctx.config().trials; ++k) {
      const Polynomial h = random_polynomial(ctx.rng(), d, 3, 4);
      std::vector<Polynomial> v;
      for (int e = 0; e < d; ++e) v.push_back(random_polynomial(ctx.rng(), d, 3, 3));
      std::vector<Polynomial> flow(d, Polynomial(d));
      for (int e = 0; e < d; ++e)
        for (int b = 0; b < d; ++b)
          if (conv.upper(e, b)) flow[e] += Rational(conv.upper(e, b)) * h.derivative(b);
      bool ok = true;
      for (int e = 0; e < d; ++e) {
        Polynomial transport(d);
        for (int f = 0; f < d; ++f) transport += flow[f] * v[e].derivative(f);
        // (i/2) K_ab (i s^{ab})^e_f V^f = -(1/2) K_ab s^{ab e}_f V^f.
        Polynomial lhs = transport;
        Polynomial rhs = transport;
        for (int f = 0; f < d; ++f) {
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
              const int c = s[a * d + b][e * d + f];
              if (c) lhs += Rational(-c) / 2 * h.derivative(a).derivative(b) * v[f];
            }
          rhs -= flow[e].derivative(f) * v[f];
        }
        ok = ok && lhs == rhs;
      }
      ++total;
      failed += !ok;
    }
  }
  return exact(failed == 0, fmt("%d/%d random (V, H) pairs agree exactly", total - failed, total));
}

Outcome rho_antisymmetry(Context& ctx) {
  const FockRep rep = build_fock(1, 6, ctx.config().ordering);
  Worst w;
  w.require(rho_from_psi(rep, CMat::Zero(rep.size(), rep.size())).isZero(0.0), "psi=0 gives rho=0");
  for (int k = 0; k < 5; ++k) {
    const Mat rho = rho_from_psi(rep, random_psi(rep, ctx.rng()));
    w.require((rho + rho.transpose()).cwiseAbs().maxCoeff() == 0.0, fmt("trial %d antisymmetric", k));
    w.add(0.0, fmt("trial %d |rho| %.3f", k, rho.norm()));
  }
  // Real symmetric psi: rho stays real antisymmetric (here it vanishes).
  const CMat g = random_psi(rep, ctx.rng()).real().cast<cd>();
  const Mat rs = rho_from_psi(rep, g + g.transpose());
  w.add(rs.cwiseAbs().maxCoeff(), "symmetric real psi |rho|");
  return w.outcome(ctx.tol(1e-13));
}

Outcome rho_transform(Context& ctx) {
  const FockRep rep = build_fock(1, 6, ctx.config().ordering);
  Worst w;
  const CMat psi = random_psi(rep, ctx.rng());
  const RhoTransformResult z = rho_transform_check(rep, psi, Mat::Identity(2, 2), 0.0);
  w.require(z.residual == 0.0, "eps=0 exact");
  for (const auto& [label, k] : {std::pair<std::string, Mat>{"K=I", Mat::Identity(2, 2)},
                                 std::pair<std::string, Mat>{"random K", random_symmetric(2, ctx.rng())}}) {
    const RhoTransformResult r = rho_transform_check(rep, psi, k, 1e-3);
    w.require(r.rho_norm > 1e-3, label + " nontrivial rho");
    w.add(std::abs(r.ratio - 4.0), fmt("%s residual %.2e ratio-4", label.c_str(), r.residual));
  }
  return w.outcome(ctx.tol(0.5));
}

}  // namespace

std::vector<CheckDef> metaplectic_checks() {
  return {
      {"metaplectic.fock_heisenberg", "metaplectic", "Eq. 6.16", fock_heisenberg},
      {"metaplectic.clifford", "metaplectic", "Eq. 6.10", clifford},
      {"metaplectic.sigma_gamma_commutator", "metaplectic", "Eq. G2", sigma_gamma},
      {"metaplectic.sigma_hermiticity", "metaplectic", "Eq. 6.15", sigma_hermiticity},
      {"metaplectic.intertwine", "metaplectic", "Eq. 6.12", intertwine},
      {"metaplectic.unitarity", "metaplectic", "Eq. 6.15", unitarity},
      {"metaplectic.spinor_constant_oracle", "metaplectic", "Eq. 7.8", spinor_constant_oracle},
      {"metaplectic.spinor_norm", "metaplectic", "Eq. 7.8", spinor_norm},
      {"jacobi_bilinear", "metaplectic", "Eq. G4", jacobi_bilinear},
      {"metaplectic.jacobi_growth", "metaplectic", "Eq. 7.10", jacobi_growth},
      {"metaplectic.jacobi_zero_field", "metaplectic", "Eq. G4", jacobi_zero_field},
      {"metaplectic.svh_hermiticity", "metaplectic", "Eq. 7.22", svh_hermiticity},
      {"metaplectic.cpi_witness", "metaplectic", "Eq. 7.25", cpi_witness},
      {"metaplectic.finite_reps", "metaplectic", "Eq. F3", finite_reps_check},
      {"metaplectic.finite_reps_symplectic", "metaplectic", "Eq. F4", finite_reps_symplectic},
      {"metaplectic.finite_lie_consistency", "metaplectic", "Eq. F1", finite_lie_consistency},
      {"metaplectic.rho_antisymmetry", "metaplectic", "Eq. H2", rho_antisymmetry},
      {"metaplectic.rho_transform", "metaplectic", "Eq. H3", rho_transform},
  };
}

}  // namespace forge::suites
