#include "forge/metaplectic.hpp"

#include "forge/errors.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <complex>
#include <iomanip>
#include <ostream>

namespace forge::meta {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat embed(const CMat& op, int mode, int N, int D) {
  CMat out = CMat::Identity(1, 1);
  for (int k = 0; k < N; ++k) out = kron(out, k == mode ? op : CMat::Identity(D, D).eval());
  return out;
}

double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void check_symmetric(const Mat& k, int d) {
  if (k.rows() != d || k.cols() != d) throw ConfigError("K has the wrong dimension");
  if ((k - k.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw PreconditionError("K must be symmetric");
}

template <class F, class Y>
Y rk4(const F& f, const Y& y, double h) {
  const Y k1 = f(y);
  const Y k2 = f(Y(y + 0.5 * h * k1));
  const Y k3 = f(Y(y + 0.5 * h * k2));
  const Y k4 = f(Y(y + h * k3));
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Flow point and spinor advanced together by one RK4.
struct Joint {
  Vec phi;
  CVec eta;
  Joint operator+(const Joint& o) const { return {phi + o.phi, eta + o.eta}; }
  friend Joint operator*(double c, const Joint& j) { return {c * j.phi, c * j.eta}; }
};

}  // namespace

int FockRep::size() const {
  int s = 1;
  for (int k = 0; k < N; ++k) s *= D;
  return s;
}

CMat FockRep::projector(int drop) const {
  const int s = size();
  CMat p = CMat::Zero(s, s);
  for (int idx = 0; idx < s; ++idx) {
    bool keep = true;
    int rest = idx;
    for (int k = 0; k < N; ++k) {
      if (rest % D >= D - drop) keep = false;
      rest /= D;
    }
    if (keep) p(idx, idx) = 1.0;
  }
  return p;
}

CMat FockRep::k_sigma(const Mat& k) const {
  check_symmetric(k, dim());
  CMat out = CMat::Zero(size(), size());
  for (int a = 0; a < dim(); ++a)
    for (int b = 0; b < dim(); ++b)
      if (k(a, b) != 0.0) out += k(a, b) * sigma_at(a, b);
  return out;
}

FockRep build_fock(int N, int D, PhaseOrdering ordering) {
  if (N < 1) throw ConfigError("need at least one mode");
  if (D < 4) throw PreconditionError("truncation dimension D must be >= 4");
  FockRep rep;
  rep.N = N;
  rep.D = D;
  rep.ordering = ordering;
  CMat a = CMat::Zero(D, D);
  for (int j = 1; j < D; ++j) a(j - 1, j) = std::sqrt(static_cast<double>(j));
  const CMat ad = a.adjoint();
  const double r = 1.0 / std::sqrt(2.0);
  const CMat x1 = r * (a + ad);
  const CMat p1 = (kI * r) * (ad - a);
  for (int k = 0; k < N; ++k) {
    rep.x.push_back(embed(x1, k, N, D));
    rep.p.push_back(embed(p1, k, N, D));
  }
  const SymplecticConvention conv(N, ordering);
  rep.gamma.resize(2 * N);
  for (int k = 0; k < N; ++k) {
    rep.gamma[conv.from_qp(k)] = std::sqrt(2.0) * rep.x[k];
    rep.gamma[conv.from_qp(N + k)] = std::sqrt(2.0) * rep.p[k];
  }
  const int d = 2 * N;
  rep.sigma.resize(static_cast<std::size_t>(d * d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      rep.sigma[i * d + j] = 0.25 * (rep.gamma[i] * rep.gamma[j] + rep.gamma[j] * rep.gamma[i]);
  return rep;
}

double clifford_error(const FockRep& rep) {
  const CMat p = rep.projector(1);
  const SymplecticConvention conv = rep.convention();
  const CMat id = CMat::Identity(rep.size(), rep.size());
  double err = 0.0;
  for (int a = 0; a < rep.dim(); ++a)
    for (int b = 0; b < rep.dim(); ++b) {
      const CMat c = rep.gamma[a] * rep.gamma[b] - rep.gamma[b] * rep.gamma[a];
      err = std::max(err, max_abs(p * (c - (2.0 * kI * double(conv.upper(a, b))) * id) * p));
    }
  return err;
}

double sigma_gamma_error(const FockRep& rep) {
  const CMat p = rep.projector(2);
  const SymplecticConvention conv = rep.convention();
  double err = 0.0;
  for (int a = 0; a < rep.dim(); ++a)
    for (int b = a; b < rep.dim(); ++b)
      for (int d = 0; d < rep.dim(); ++d) {
        const CMat& s = rep.sigma_at(a, b);
        const CMat lhs = s * rep.gamma[d] - rep.gamma[d] * s;
        const CMat rhs = kI * (double(conv.upper(a, d)) * rep.gamma[b] +
                               double(conv.upper(b, d)) * rep.gamma[a]);
        err = std::max(err, max_abs(p * (lhs - rhs) * p));
      }
  return err;
}

double hermiticity_error(const FockRep& rep) {
  double err = 0.0;
  for (const auto& g : rep.gamma) err = std::max(err, max_abs(g - g.adjoint()));
  for (const auto& s : rep.sigma) err = std::max(err, max_abs(s - s.adjoint()));
  return err;
}

CMat metaplectic_operator(const FockRep& rep, const Mat& k, double eps) {
  const CMat gen = rep.k_sigma(k);
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (gen + gen.adjoint()));
  if (es.info() != Eigen::Success) throw StructuralError("eigendecomposition of K Sigma failed");
  CVec phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases[i] = std::exp(-0.5 * kI * eps * es.eigenvalues()[i]);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Mat symplectic_vector(const SymplecticConvention& conv, const Mat& k, double eps) {
  return Mat::Identity(conv.dim(), conv.dim()) + eps * conv.upper_matrix() * k;
}

IntertwineResult intertwine_check(const FockRep& rep, const Mat& k, double eps) {
  check_symmetric(k, rep.dim());
  if (!(eps > 0) || eps > 1e-3) throw PreconditionError("eps must lie in (0, 1e-3]");
  const SymplecticConvention conv = rep.convention();
  const CMat p2 = rep.projector(2);
  const Mat omega = conv.upper_matrix();
  auto residual = [&](double e, double* unitarity) {
    const CMat m = metaplectic_operator(rep, k, e);
    if (unitarity) {
      const CMat id = CMat::Identity(rep.size(), rep.size());
      *unitarity = max_abs(p2 * (m.adjoint() * m - id) * p2);
    }
    const Mat s = symplectic_vector(conv, k, e);
    double r = 0.0;
    for (int a = 0; a < rep.dim(); ++a) {
      CMat pred = CMat::Zero(rep.size(), rep.size());
      for (int b = 0; b < rep.dim(); ++b) pred += s(a, b) * rep.gamma[b];
      r = std::max(r, max_abs(p2 * (m.adjoint() * rep.gamma[a] * m - pred) * p2));
    }
    return r;
  };
  auto sp_residual = [&](double e) {
    const Mat s = symplectic_vector(conv, k, e);
    return (s.transpose() * omega * s - omega).cwiseAbs().maxCoeff();
  };
  IntertwineResult res;
  res.residual = residual(eps, &res.unitarity);
  res.residual_half = residual(eps / 2, nullptr);
  res.ratio = res.residual_half > 0 ? res.residual / res.residual_half : 0.0;
  res.symplectic_residual = sp_residual(eps);
  res.symplectic_residual_half = sp_residual(eps / 2);
  return res;
}

SpinorRun integrate_spinor(const FockRep& rep, const dynamics::HamiltonianSystem& sys,
                           const Vec& phi0, const CVec& eta0, double T, double dt) {
  if (sys.n != rep.N || sys.ordering != rep.ordering)
    throw ConfigError("system and Fock representation disagree on modes or ordering");
  if (phi0.size() != rep.dim() || eta0.size() != rep.size())
    throw ConfigError("initial data has the wrong dimension");
  const int steps = dynamics::step_count(T, dt);
  const double h = T / steps;
  const Mat omega = rep.convention().upper_matrix();
  const int d = rep.dim();

  auto f = [&](const Joint& y) {
    const Mat k = sys.hessian(y.phi);
    return Joint{omega * sys.gradient(y.phi), (-0.5 * kI) * (rep.k_sigma(k) * y.eta)};
  };

  SpinorRun run;
  run.flow.dt = h;
  const double norm0 = eta0.norm();
  Joint y{phi0, eta0};
  auto record = [&](double t) {
    run.flow.states.push_back({y.phi, Vec::Zero(d), Vec::Zero(d), t});
    run.eta.push_back(y.eta);
    run.norm_drift = std::max(run.norm_drift, std::abs(y.eta.norm() - norm0));
  };
  record(0.0);
  for (int k = 1; k <= steps; ++k) {
    y = rk4(f, y, h);
    if (!y.phi.allFinite() || !y.eta.allFinite())
      throw DivergedError("non-finite spinor state", (k - 1) * h);
    record(k * h);
  }
  return run;
}

Vec bilinear(const FockRep& rep, const CVec& eta) {
  Vec out(rep.dim());
  for (int a = 0; a < rep.dim(); ++a) out[a] = eta.dot(rep.gamma[a] * eta).real();
  return out;
}

JacobiBilinearResult jacobi_bilinear_check(const FockRep& rep, const dynamics::HamiltonianSystem& sys,
                                           const Vec& phi0, const CVec& eta0, double T, double dt) {
  const SpinorRun run = integrate_spinor(rep, sys, phi0, eta0, T, dt);
  JacobiBilinearResult res;
  res.norm_drift = run.norm_drift;
  res.p0 = bilinear(rep, eta0);
  const dynamics::Trajectory jac =
      dynamics::integrate(sys, {phi0, res.p0, Vec::Zero(rep.dim()), 0.0}, T, dt);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long count = 0;
  bool growth_defined = true;
  for (std::size_t i = 0; i < run.eta.size(); ++i) {
    const Vec ps = bilinear(rep, run.eta[i]);
    const Vec& pj = jac.states[i].pi;
    const double diff = (ps - pj).norm();
    res.max_absolute = std::max(res.max_absolute, diff);
    if (pj.norm() > 0) res.max_relative = std::max(res.max_relative, diff / pj.norm());
    const double np = ps.norm();
    if (np > 1e-300) {
      const double t = jac.states[i].t;
      sx += t;
      sy += std::log(np);
      sxx += t * t;
      sxy += t * std::log(np);
      ++count;
    } else {
      growth_defined = false;
    }
  }
  if (growth_defined && count >= 2) {
    const double c = static_cast<double>(count);
    res.growth_rate = (c * sxy - sx * sy) / (c * sxx - sx * sx);
  }
  return res;
}

CVec coherent_state(const FockRep& rep, std::span<const std::complex<double>> alpha) {
  if (static_cast<int>(alpha.size()) != rep.N) throw ConfigError("one amplitude per mode");
  CVec out = CVec::Ones(1);
  for (int k = 0; k < rep.N; ++k) {
    CVec mode(rep.D);
    cd term = 1.0;
    for (int j = 0; j < rep.D; ++j) {
      if (j > 0) term *= alpha[k] / std::sqrt(static_cast<double>(j));
      mode[j] = term;
    }
    CVec next(out.size() * rep.D);
    for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * rep.D, rep.D) = out[i] * mode;
    out = next;
  }
  return out / out.norm();
}

CVec ground_state(const FockRep& rep) {
  CVec out = CVec::Zero(rep.size());
  out[0] = 1.0;
  return out;
}

CMat slater_lift(const CMat& one_body, int particles) {
  const int d = static_cast<int>(one_body.rows());
  if (one_body.cols() != d) throw ConfigError("one-body operator must be square");
  if (particles < 1 || particles > d) throw PreconditionError("particle number must lie in [1, d]");
  std::vector<unsigned> basis;
  for (unsigned mask = 0; mask < (1u << d); ++mask)
    if (std::popcount(mask) == particles) basis.push_back(mask);
  std::vector<long> index(1u << d, -1);
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<long>(i);
  // Fermionic sign: number of occupied orbitals below position q.
  auto below = [](unsigned mask, int q) { return std::popcount(mask & ((1u << q) - 1u)); };
  const auto m = static_cast<Eigen::Index>(basis.size());
  CMat out = CMat::Zero(m, m);
  for (Eigen::Index col = 0; col < m; ++col) {
    const unsigned t = basis[col];
    for (int j = 0; j < d; ++j) {
      if (!(t & (1u << j))) continue;
      const unsigned removed = t & ~(1u << j);
      const int s1 = below(t, j);
      for (int i = 0; i < d; ++i) {
        if (removed & (1u << i)) continue;
        const unsigned added = removed | (1u << i);
        const int s2 = below(removed, i);
        const double sign = ((s1 + s2) % 2 == 0) ? 1.0 : -1.0;
        out(index[added], col) += sign * one_body(i, j);
      }
    }
  }
  return out;
}

SvhResult svh_hermiticity_check(const FockRep& rep, const Mat& k_meta, int d, int particles,
                                const SymplecticConvention& vec_conv, const Mat& k_vec) {
  if (d < 1 || d > 8 || d > rep.size()) throw PreconditionError("d must lie in [1, min(8, D^N)]");
  if (particles > d) throw PreconditionError("particle number exceeds d");
  const CMat meta = 0.5 * rep.k_sigma(k_meta).topLeftCorner(d, d);
  const FiniteRepSet reps = finite_reps(vec_conv);
  const CMat vec = finite_k_sigma(reps, reps.sigma_vec, k_vec);
  SvhResult r;
  const CMat lm = slater_lift(meta, particles);
  r.meta_error = max_abs(lm - lm.adjoint());
  const int pv = std::min(particles, vec_conv.dim());
  const CMat lv = slater_lift(vec, pv);
  r.vec_error = max_abs(lv - lv.adjoint());
  return r;
}

FiniteRepSet finite_reps(const SymplecticConvention& conv) {
  FiniteRepSet out;
  out.n = conv.n();
  const int d = conv.dim();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      CMat v = CMat::Zero(d, d);
      for (int e = 0; e < d; ++e)
        for (int f = 0; f < d; ++f) {
          const double c = (a == f ? conv.upper(b, e) : 0) + (b == f ? conv.upper(a, e) : 0);
          v(e, f) = -kI * c;
        }
      out.sigma_vec.push_back(v);
      out.sigma_form.push_back(-v);
    }
  return out;
}

CMat finite_k_sigma(const FiniteRepSet& reps, const std::vector<CMat>& sigma, const Mat& k) {
  const int d = 2 * reps.n;
  check_symmetric(k, d);
  CMat out = CMat::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) out += (0.5 * k(a, b)) * sigma[a * d + b];
  return out;
}

Mat rho_from_psi(const FockRep& rep, const CMat& psi) {
  if (psi.rows() != rep.size() || psi.cols() != rep.size())
    throw ConfigError("psi must be a D^N x D^N array");
  const SymplecticConvention conv = rep.convention();
  const int d = rep.dim();
  std::vector<CMat> lowered(d, CMat::Zero(rep.size(), rep.size()));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      if (conv.lower(a, b) != 0) lowered[a] += double(conv.lower(a, b)) * rep.gamma[b];
  Mat t(d, d);
  for (int a = 0; a < d; ++a) {
    const CMat left = psi.adjoint() * lowered[a] * psi;
    for (int b = 0; b < d; ++b) t(a, b) = (left * lowered[b].transpose()).trace().real();
  }
  return 0.5 * (t - t.transpose());
}

RhoTransformResult rho_transform_check(const FockRep& rep, const CMat& psi, const Mat& k, double eps) {
  check_symmetric(k, rep.dim());
  if (eps < 0 || eps > 1e-3) throw PreconditionError("eps must lie in [0, 1e-3]");
  const SymplecticConvention conv = rep.convention();
  const Mat rho = rho_from_psi(rep, psi);
  auto residual = [&](double e) {
    const CMat m = metaplectic_operator(rep, k, e);
    const Mat moved = rho_from_psi(rep, m * psi * m.transpose());
    const Mat s = Mat::Identity(rep.dim(), rep.dim()) - e * conv.upper_matrix() * k;
    return (moved - s.transpose() * rho * s).cwiseAbs().maxCoeff();
  };
  RhoTransformResult r;
  r.rho_norm = rho.cwiseAbs().maxCoeff();
  r.residual = residual(eps);
  r.residual_half = residual(eps / 2);
  r.ratio = r.residual_half > 0 ? r.residual / r.residual_half : 0.0;
  return r;
}

CMat random_psi(const FockRep& rep, std::mt19937_64& rng) {
  if (rep.D < 6) throw PreconditionError("random psi needs D >= 6");
  std::normal_distribution<double> g(0.0, 1.0);
  const CMat keep = rep.projector(4);
  CMat psi(rep.size(), rep.size());
  for (Eigen::Index i = 0; i < psi.rows(); ++i)
    for (Eigen::Index j = 0; j < psi.cols(); ++j) psi(i, j) = cd(g(rng), g(rng));
  psi = keep * psi * keep;
  return psi / psi.norm();
}

Mat random_symmetric(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat k(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) k(i, j) = k(j, i) = u(rng);
  return k;
}

void write_matrix_csv(std::ostream& os, const CMat& m) {
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      os << (j ? "," : "") << m(i, j).real() << "," << m(i, j).imag();
    os << "\n";
  }
}

}  // namespace forge::meta
