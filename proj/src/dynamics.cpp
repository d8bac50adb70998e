#include "forge/dynamics.hpp"

#include "forge/errors.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace forge::dynamics {

namespace {

struct QpModel {
  std::function<double(double, double)> h;
  std::function<double(double)> dq;       // dH/dq, p-part is always p
  std::function<double(double)> dqq;      // d2H/dq2, d2H/dp2 = 1
  std::function<double(double)> dqqq;     // d3H/dq3, all other third derivatives vanish
};

QpModel model_for(const std::string& name, const SystemParams& p) {
  if (name == "harmonic") {
    if (!(p.omega0 > 0)) throw ConfigError("harmonic needs omega0 > 0");
    const double w2 = p.omega0 * p.omega0;
    return {[w2](double q, double pp) { return 0.5 * (pp * pp + w2 * q * q); },
            [w2](double q) { return w2 * q; }, [w2](double) { return w2; },
            [](double) { return 0.0; }};
  }
  if (name == "inverted") {
    if (!(p.k > 0)) throw ConfigError("inverted needs k > 0");
    const double k2 = p.k * p.k;
    return {[k2](double q, double pp) { return 0.5 * (pp * pp - k2 * q * q); },
            [k2](double q) { return -k2 * q; }, [k2](double) { return -k2; },
            [](double) { return 0.0; }};
  }
  if (name == "pendulum") {
    return {[](double q, double pp) { return 0.5 * pp * pp - std::cos(q); },
            [](double q) { return std::sin(q); }, [](double q) { return std::cos(q); },
            [](double q) { return -std::sin(q); }};
  }
  if (name == "double_well") {
    return {[](double q, double pp) { return 0.5 * pp * pp + 0.25 * q * q * q * q - 0.5 * q * q; },
            [](double q) { return q * q * q - q; }, [](double q) { return 3 * q * q - 1; },
            [](double q) { return 6 * q; }};
  }
  throw ConfigError("unknown system '" + name + "'");
}

Mat omega_of(const HamiltonianSystem& sys) {
  return SymplecticConvention(sys.n, sys.ordering).upper_matrix();
}

void require_finite(const Vec& v, double t, const char* what) {
  if (!v.allFinite())
    throw DivergedError(std::string("non-finite ") + what + " during integration", t);
}

struct JointRhs {
  const HamiltonianSystem& sys;
  Mat omega;
  // y = (phi, pi, xi) stacked.
  Vec operator()(const Vec& y) const {
    const int d = sys.dim();
    const Vec phi = y.segment(0, d);
    const Mat a = omega * sys.hessian(phi);
    Vec out(3 * d);
    out.segment(0, d) = omega * sys.gradient(phi);
    out.segment(d, d) = a * y.segment(d, d);
    out.segment(2 * d, d) = -a.transpose() * y.segment(2 * d, d);
    return out;
  }
};

template <class F, class Y>
Y rk4_step(const F& f, const Y& y, double h) {
  const Y k1 = f(y);
  const Y k2 = f(Y(y + 0.5 * h * k1));
  const Y k3 = f(Y(y + 0.5 * h * k2));
  const Y k4 = f(Y(y + h * k3));
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Vec stack(const ExtendedState& s) {
  const int d = static_cast<int>(s.phi.size());
  Vec y(3 * d);
  y << s.phi, s.pi, s.xi;
  return y;
}

ExtendedState unstack(const Vec& y, int d, double t) {
  return {y.segment(0, d), y.segment(d, d), y.segment(2 * d, d), t};
}

void check_state(const HamiltonianSystem& sys, const ExtendedState& s) {
  const auto d = static_cast<Eigen::Index>(sys.dim());
  if (s.phi.size() != d || s.pi.size() != d || s.xi.size() != d)
    throw ConfigError("state dimension does not match the system");
  if (!s.phi.allFinite() || !s.pi.allFinite() || !s.xi.allFinite())
    throw PreconditionError("initial state has non-finite entries");
}

template <class Visit>
void run(const HamiltonianSystem& sys, const ExtendedState& s0, double T, double dt, Visit visit) {
  check_state(sys, s0);
  const int steps = step_count(T, dt);
  const double h = T / steps;
  const JointRhs rhs{sys, omega_of(sys)};
  Vec y = stack(s0);
  visit(y, s0.t, h);
  for (int k = 1; k <= steps; ++k) {
    const double t_prev = s0.t + (k - 1) * h;
    y = rk4_step(rhs, y, h);
    require_finite(y, t_prev, "state");
    visit(y, s0.t + k * h, h);
  }
}

}  // namespace

HamiltonianSystem system_library(const std::string& name, const SystemParams& params,
                                 PhaseOrdering ordering) {
  const QpModel m = model_for(name, params);
  const SymplecticConvention conv(1, ordering);
  const int iq = conv.from_qp(0);
  const int ip = conv.from_qp(1);
  HamiltonianSystem s;
  s.name = name;
  s.n = 1;
  s.ordering = ordering;
  s.energy = [m, iq, ip](const Vec& x) { return m.h(x[iq], x[ip]); };
  s.gradient = [m, iq, ip](const Vec& x) {
    Vec g(2);
    g[iq] = m.dq(x[iq]);
    g[ip] = x[ip];
    return g;
  };
  s.hessian = [m, iq, ip](const Vec& x) {
    Mat k = Mat::Zero(2, 2);
    k(iq, iq) = m.dqq(x[iq]);
    k(ip, ip) = 1.0;
    return k;
  };
  s.third = [m, iq](const Vec& x) {
    std::vector<double> t(8, 0.0);
    t[(iq * 2 + iq) * 2 + iq] = m.dqqq(x[iq]);
    return t;
  };
  return s;
}

std::vector<std::string> library_names() { return {"harmonic", "inverted", "pendulum", "double_well"}; }

HamiltonianSystem null_system(int n, PhaseOrdering ordering) {
  HamiltonianSystem s;
  s.name = "null";
  s.n = n;
  s.ordering = ordering;
  const int d = 2 * n;
  s.energy = [](const Vec&) { return 0.0; };
  s.gradient = [d](const Vec&) { return Vec::Zero(d).eval(); };
  s.hessian = [d](const Vec&) { return Mat::Zero(d, d).eval(); };
  s.third = [d](const Vec&) { return std::vector<double>(static_cast<std::size_t>(d * d * d), 0.0); };
  return s;
}

int step_count(double T, double dt) {
  if (!(dt > 0) || !std::isfinite(dt)) throw PreconditionError("dt must be positive");
  if (!(T > 0) || !std::isfinite(T)) throw PreconditionError("T must be positive");
  const double ratio = T / dt;
  const double nearest = std::round(ratio);
  if (nearest >= 1 && std::abs(ratio - nearest) <= 1e-9 * ratio) return static_cast<int>(nearest);
  return static_cast<int>(std::ceil(ratio));
}

Trajectory integrate(const HamiltonianSystem& sys, const ExtendedState& s0, double T, double dt) {
  Trajectory traj;
  const int d = sys.dim();
  traj.states.reserve(static_cast<std::size_t>(step_count(T, dt)) + 1);
  run(sys, s0, T, dt, [&](const Vec& y, double t, double h) {
    traj.states.push_back(unstack(y, d, t));
    traj.dt = h;
  });
  return traj;
}

ExtendedState integrate_final(const HamiltonianSystem& sys, const ExtendedState& s0, double T,
                              double dt) {
  ExtendedState last;
  const int d = sys.dim();
  run(sys, s0, T, dt, [&](const Vec& y, double t, double) { last = unstack(y, d, t); });
  return last;
}

Mat tangent_map(const HamiltonianSystem& sys, const Vec& phi0, double T, double dt) {
  const int d = sys.dim();
  if (phi0.size() != d) throw ConfigError("phi0 dimension does not match the system");
  const Mat omega = omega_of(sys);
  const int steps = step_count(T, dt);
  const double h = T / steps;
  // Columns: phi, then the d columns of the variational matrix.
  auto f = [&](const Mat& y) -> Mat {
    const Vec phi = y.col(0);
    Mat out(d, d + 1);
    out.col(0) = omega * sys.gradient(phi);
    out.rightCols(d) = omega * sys.hessian(phi) * y.rightCols(d);
    return out;
  };
  Mat y(d, d + 1);
  y.col(0) = phi0;
  y.rightCols(d) = Mat::Identity(d, d);
  for (int k = 1; k <= steps; ++k) {
    y = rk4_step(f, y, h);
    if (!y.allFinite()) throw DivergedError("non-finite tangent map", (k - 1) * h);
  }
  return y.rightCols(d);
}

TransportResult transport_check(const HamiltonianSystem& sys, const ExtendedState& s0, double T,
                                double dt) {
  TransportResult r;
  const double pair0 = s0.xi.dot(s0.pi);
  ExtendedState last;
  const int d = sys.dim();
  run(sys, s0, T, dt, [&](const Vec& y, double t, double) {
    last = unstack(y, d, t);
    r.pairing_drift = std::max(r.pairing_drift, std::abs(last.xi.dot(last.pi) - pair0));
  });
  const Mat m = tangent_map(sys, s0.phi, T, dt);
  const Vec pi_ref = m * s0.pi;
  const Vec xi_ref = m.transpose().fullPivLu().solve(s0.xi);
  auto rel = [](const Vec& a, const Vec& b) {
    const double scale = b.norm();
    return scale > 0 ? (a - b).norm() / scale : (a - b).norm();
  };
  r.pi_error = rel(last.pi, pi_ref);
  r.xi_error = rel(last.xi, xi_ref);
  const Mat omega = omega_of(sys);
  r.symplectic_error = (m.transpose() * omega * m - omega).cwiseAbs().maxCoeff();
  return r;
}

DiagramResult brs_diagram_check(const HamiltonianSystem& sys, const Vec& phi0, const Vec& pi0,
                                double T, double dt, double eps) {
  const int d = sys.dim();
  const Vec zero = Vec::Zero(d);
  const ExtendedState base = integrate_final(sys, {phi0, pi0, zero, 0.0}, T, dt);
  auto residual = [&](double e) {
    const ExtendedState moved = integrate_final(sys, {phi0 + e * pi0, zero, zero, 0.0}, T, dt);
    return (moved.phi - (base.phi + e * base.pi)).norm();
  };
  DiagramResult r;
  r.residual = residual(eps);
  r.residual_half = residual(eps / 2);
  r.ratio = r.residual_half > 0 ? r.residual / r.residual_half : 0.0;
  return r;
}

double growth_rate(const HamiltonianSystem& sys, const Vec& phi0, const Vec& pi0, double t0,
                   double t1, double dt) {
  if (!(t1 > t0) || t0 < 0) throw PreconditionError("growth window must satisfy 0 <= t0 < t1");
  const int d = sys.dim();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long count = 0;
  run(sys, {phi0, pi0, Vec::Zero(d), 0.0}, t1, dt, [&](const Vec& y, double t, double) {
    if (t < t0 - 1e-12) return;
    const double norm = y.segment(d, d).norm();
    if (!(norm > 1e-300)) throw PreconditionError("|pi| underflow inside the growth window");
    const double ly = std::log(norm);
    sx += t;
    sy += ly;
    sxx += t * t;
    sxy += t * ly;
    ++count;
  });
  if (count < 2) throw PreconditionError("growth window holds fewer than two samples");
  const double c = static_cast<double>(count);
  return (c * sxy - sx * sy) / (c * sxx - sx * sx);
}

DerivativeCheck derivative_check(const HamiltonianSystem& sys, std::mt19937_64& rng, int points,
                                 double step) {
  const int d = sys.dim();
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  DerivativeCheck r;
  auto rel = [](double fd, double an) { return std::abs(fd - an) / std::max(1.0, std::abs(an)); };
  for (int k = 0; k < points; ++k) {
    Vec x(d);
    for (int i = 0; i < d; ++i) x[i] = u(rng);
    const Vec g = sys.gradient(x);
    const Mat hs = sys.hessian(x);
    const std::vector<double> th = sys.third(x);
    r.hessian_asymmetry = std::max(r.hessian_asymmetry, (hs - hs.transpose()).cwiseAbs().maxCoeff());
    for (int a = 0; a < d; ++a) {
      Vec xp = x, xm = x;
      xp[a] += step;
      xm[a] -= step;
      r.gradient = std::max(r.gradient, rel((sys.energy(xp) - sys.energy(xm)) / (2 * step), g[a]));
      const Vec dg = (sys.gradient(xp) - sys.gradient(xm)) / (2 * step);
      const Mat dh = (sys.hessian(xp) - sys.hessian(xm)) / (2 * step);
      for (int b = 0; b < d; ++b) {
        r.hessian = std::max(r.hessian, rel(dg[b], hs(a, b)));
        for (int c = 0; c < d; ++c)
          r.third = std::max(r.third, rel(dh(b, c), th[(a * d + b) * d + c]));
      }
    }
  }
  return r;
}

double double_jump_residual(const HamiltonianSystem& sys, const Vec& phi0, double dt) {
  const Mat omega = omega_of(sys);
  const Vec jumped = phi0 + dt * (omega * sys.gradient(phi0));
  auto f = [&](const Vec& phi) -> Vec { return omega * sys.gradient(phi); };
  return (jumped - rk4_step(f, phi0, dt)).norm();
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  if (traj.states.empty()) return;
  const auto d = traj.states.front().phi.size();
  os << "t";
  for (const char* tag : {"phi", "pi", "xi"})
    for (Eigen::Index a = 0; a < d; ++a) os << "," << tag << "_" << (a + 1);
  os << "\n" << std::setprecision(17);
  for (const auto& s : traj.states) {
    os << s.t;
    for (const Vec* v : {&s.phi, &s.pi, &s.xi})
      for (Eigen::Index a = 0; a < d; ++a) os << "," << (*v)[a];
    os << "\n";
  }
}

}  // namespace forge::dynamics
