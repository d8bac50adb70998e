#include "forge/bfa.hpp"

#include <utility>

namespace forge::bfa {

using namespace algebra;

namespace {

GradedPolynomial h1(int n, std::initializer_list<int> d) { return symbol(n, SymbolKind::H1, d); }

Scalar w(const SymplecticConvention& conv, int a, int b) { return Scalar(conv.upper(a, b)); }
Scalar w_low(const SymplecticConvention& conv, int a, int b) { return Scalar(conv.lower(a, b)); }

GradedPolynomial zero(int n) { return GradedPolynomial(n); }

}  // namespace

GradedPolynomial hamiltonian_from_function(const SymplecticConvention& conv,
                                           const GradedPolynomial& f) {
  const int n = conv.n();
  const int d = conv.dim();
  std::vector<GradedPolynomial> grad;
  grad.reserve(d);
  for (int b = 0; b < d; ++b) grad.push_back(differentiate(f, b));
  GradedPolynomial out(n);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const Scalar wab = w(conv, a, b);
      if (wab.is_zero()) continue;
      out += wab * (lambda(n, a) * grad[b]);
      for (int l = 0; l < d; ++l) {
        const GradedPolynomial hess = differentiate(grad[b], l);
        out -= wab * (pi(n, l) * hess * xi(n, a));
      }
    }
  }
  return normal_order(out);
}

GradedPolynomial hamiltonian_bfa(const SymplecticConvention& conv, SymbolKind family) {
  return hamiltonian_from_function(conv, symbol(conv.n(), family));
}

GradedPolynomial poisson_bracket(const SymplecticConvention& conv, const GradedPolynomial& f,
                                 const GradedPolynomial& g) {
  GradedPolynomial out(conv.n());
  for (int b = 0; b < conv.dim(); ++b)
    for (int c = 0; c < conv.dim(); ++c) {
      const Scalar wbc = w(conv, b, c);
      if (!wbc.is_zero()) out += wbc * (differentiate(f, b) * differentiate(g, c));
    }
  return normal_order(out);
}

ChargeSet build_charges(const SymplecticConvention& conv) {
  const int n = conv.n();
  const int d = conv.dim();
  ChargeSet c;
  c.n = n;
  c.Qg = c.N = c.Nbar = c.Q = c.Qbar = c.K = c.Kbar = zero(n);
  const Scalar i = Scalar::i();
  const Scalar half = Scalar::ratio(1, 2);
  for (int a = 0; a < d; ++a) {
    c.Qg += i * (pi(n, a) * xi(n, a));
    c.N += pi(n, a) * h1(n, {a});
    c.Q += i * (pi(n, a) * lambda(n, a));
    for (int b = 0; b < d; ++b) {
      c.Nbar += w(conv, a, b) * (xi(n, a) * h1(n, {b}));
      c.Qbar += (i * w(conv, a, b)) * (xi(n, a) * lambda(n, b));
      c.K += (half * w_low(conv, a, b)) * (pi(n, a) * pi(n, b));
      c.Kbar += (half * w(conv, a, b)) * (xi(n, a) * xi(n, b));
    }
  }
  c.Qg = normal_order(c.Qg);
  c.N = normal_order(c.N);
  c.Nbar = normal_order(c.Nbar);
  c.Q = normal_order(c.Q);
  c.Qbar = normal_order(c.Qbar);
  c.QH = normal_order(c.Q - c.N);
  c.QHbar = normal_order(c.Qbar + c.Nbar);
  c.Q1 = normal_order(c.Q - c.Nbar);
  c.Q2 = normal_order(c.Qbar + c.N);
  // K and Kbar are kept as constructed so that their vanishing is a check.
  return c;
}

IdentityVerdict make_verdict(std::string check_id, std::string label, GradedPolynomial lhs,
                             GradedPolynomial rhs) {
  IdentityVerdict v;
  v.check_id = std::move(check_id);
  v.label = std::move(label);
  v.lhs = normal_order(lhs);
  v.rhs = normal_order(rhs);
  v.pass = equals(v.lhs, v.rhs);
  return v;
}

IdentityVerdict hermiticity(const SymplecticConvention& conv) {
  const GradedPolynomial h = hamiltonian_bfa(conv, SymbolKind::H1);
  return make_verdict("hermiticity_bfa", "H^dagger = H", dagger(h), h);
}

std::vector<IdentityVerdict> charge_structure(const SymplecticConvention& conv, const ChargeSet& c) {
  const int n = conv.n();
  GradedPolynomial qg(n);
  for (int a = 0; a < conv.dim(); ++a) qg += Scalar::i() * (pi(n, a) * xi(n, a));
  return {
      make_verdict("charges.QH", "QH = Q - N", c.QH, c.Q - c.N),
      make_verdict("charges.QHbar", "QHbar = Qbar + Nbar", c.QHbar, c.Qbar + c.Nbar),
      make_verdict("charges.Q1", "Q1 = Q - Nbar", c.Q1, c.Q - c.Nbar),
      make_verdict("charges.Q2", "Q2 = Qbar + N", c.Q2, c.Qbar + c.N),
      make_verdict("charges.Qg", "Qg = i pi^a xi_a", c.Qg, qg),
  };
}

std::vector<IdentityVerdict> vanishing_k(const ChargeSet& c) {
  return {make_verdict("k_vanish", "K = 0", c.K, zero(c.n)),
          make_verdict("k_vanish", "Kbar = 0", c.Kbar, zero(c.n))};
}

std::vector<IdentityVerdict> ghost_grading(const ChargeSet& c, const GradedPolynomial& h) {
  const int n = c.n;
  std::vector<IdentityVerdict> out;
  for (int a = 0; a < 2 * n; ++a) {
    out.push_back(make_verdict("ghost_grading", "[Qg, pi^a] = -pi^a", commutator(c.Qg, pi(n, a)),
                               -pi(n, a)));
    out.push_back(
        make_verdict("ghost_grading", "[Qg, xi_a] = xi_a", commutator(c.Qg, xi(n, a)), xi(n, a)));
  }
  out.push_back(make_verdict("ghost_grading", "[Qg, H] = 0", commutator(c.Qg, h), zero(n)));
  return out;
}

std::vector<IdentityVerdict> verify_conservation(const ChargeSet& c, const GradedPolynomial& h) {
  return {make_verdict("conservation_Qg", "[Qg, H] = 0", commutator(c.Qg, h), zero(c.n)),
          make_verdict("conservation_N", "[N, H] = 0", commutator(c.N, h), zero(c.n)),
          make_verdict("conservation_Nbar", "[Nbar, H] = 0", commutator(c.Nbar, h), zero(c.n))};
}

namespace {

// Commutes with every phi^a: a premise for the anomaly to act only on the
// Jacobi-field sector.
std::vector<IdentityVerdict> phi_commuting(const std::string& id, const std::string& what,
                                           const GradedPolynomial& p) {
  std::vector<IdentityVerdict> out;
  for (int a = 0; a < p.dim(); ++a)
    out.push_back(make_verdict(id, "[" + what + ", phi^a] = 0", commutator(p, phi(p.n(), a)),
                               GradedPolynomial(p.n())));
  return out;
}

}  // namespace

std::vector<IdentityVerdict> brs_anomaly(const SymplecticConvention& conv, const ChargeSet& c,
                                         const GradedPolynomial& h) {
  const int n = conv.n();
  const int d = conv.dim();
  GradedPolynomial q_rhs(n);
  GradedPolynomial qbar_rhs(n);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const Scalar wab = w(conv, a, b);
      if (wab.is_zero()) continue;
      for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k)
          q_rhs -= wab * (pi(n, l) * h1(n, {b, l, k}) * pi(n, k) * xi(n, a));
      for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t) {
          const Scalar wst = w(conv, s, t);
          if (wst.is_zero()) continue;
          for (int l = 0; l < d; ++l)
            qbar_rhs -= (wab * wst) * (xi(n, a) * xi(n, s) * h1(n, {b, t, l}) * pi(n, l));
        }
    }
  std::vector<IdentityVerdict> out{
      make_verdict("brs_anomaly", "[Q, H]", commutator(c.Q, h), q_rhs),
      make_verdict("brs_anomaly", "[Qbar, H]", commutator(c.Qbar, h), qbar_rhs),
      make_verdict("brs_anomaly", "[QH, H] = [Q, H]", commutator(c.QH, h), q_rhs),
      make_verdict("brs_anomaly", "[QHbar, H] = [Qbar, H]", commutator(c.QHbar, h), qbar_rhs),
  };
  for (auto& v : phi_commuting("anomaly_phi_commute", "[Q, H]", q_rhs)) out.push_back(std::move(v));
  for (auto& v : phi_commuting("anomaly_phi_commute", "[Qbar, H]", qbar_rhs))
    out.push_back(std::move(v));
  return out;
}

std::vector<IdentityVerdict> susy_algebra(const SymplecticConvention& conv, const ChargeSet& c,
                                          const GradedPolynomial& h) {
  const int n = conv.n();
  const int d = conv.dim();
  GradedPolynomial extra(n);
  for (int a = 0; a < d; ++a)
    for (int dd = 0; dd < d; ++dd)
      for (int e = 0; e < d; ++e) {
        const Scalar wde = w(conv, dd, e);
        if (!wde.is_zero())
          extra += (Scalar(4) * wde) * (pi(n, a) * h1(n, {e, a}) * xi(n, dd));
      }
  std::vector<IdentityVerdict> out{
      make_verdict("susy_algebra", "[QH, QHbar] = 2H + extra", commutator(c.QH, c.QHbar),
                   Scalar(2) * h + extra),
  };
  for (auto& v : phi_commuting("susy_algebra", "extra", extra)) out.push_back(std::move(v));
  // With H switched off only the lambda bilinear survives, and it vanishes.
  out.push_back(make_verdict("susy_algebra", "[Q, Qbar] = [QH, QHbar] at H = 0",
                             commutator(c.Q, c.Qbar),
                             drop_family(commutator(c.QH, c.QHbar), SymbolKind::H1)));
  return out;
}

std::vector<IdentityVerdict> q1_action(const SymplecticConvention& conv, const ChargeSet& c,
                                       const Scalar& eps) {
  const int n = conv.n();
  const int d = conv.dim();
  const GradedPolynomial q = eps * c.Q1;
  const Scalar mi = -Scalar::i();
  std::vector<IdentityVerdict> out;
  for (int a = 0; a < d; ++a) {
    out.push_back(make_verdict("q1_action", "[eQ1, phi^a] = e pi^a", commutator(q, phi(n, a)),
                               eps * pi(n, a)));
    out.push_back(make_verdict("q1_action", "[eQ1, xi_a] = e lambda_a", commutator(q, xi(n, a)),
                               eps * lambda(n, a)));
    GradedPolynomial dpi(n);
    GradedPolynomial dlam(n);
    for (int e = 0; e < d; ++e) {
      dpi += (mi * eps * w(conv, a, e)) * h1(n, {e});
      for (int b = 0; b < d; ++b) dlam += (mi * eps * w(conv, b, e)) * (xi(n, b) * h1(n, {e, a}));
    }
    out.push_back(
        make_verdict("q1_action", "[eQ1, pi^a] = -i e w^{ae} H_e", commutator(q, pi(n, a)), dpi));
    out.push_back(make_verdict("q1_action", "[eQ1, lambda_a] = -i e xi_b w^{be} H_{ea}",
                               commutator(q, lambda(n, a)), dlam));
  }
  return out;
}

std::vector<IdentityVerdict> q1_square_on_phi(const SymplecticConvention& conv, const ChargeSet& c,
                                              const Scalar& eps) {
  const int n = conv.n();
  const GradedPolynomial q = eps * c.Q1;
  const Scalar mi = -Scalar::i();
  std::vector<IdentityVerdict> out;
  for (int a = 0; a < conv.dim(); ++a) {
    GradedPolynomial rhs(n);
    for (int e = 0; e < conv.dim(); ++e) rhs += (mi * eps * eps * w(conv, a, e)) * h1(n, {e});
    const GradedPolynomial twice = commutator(q, commutator(q, phi(n, a)));
    out.push_back(make_verdict("q1_square", "[eQ1, [eQ1, phi^a]] = -i e^2 w^{ae} H_e", twice, rhs));
    out.push_back(make_verdict("q1_square", "double action at H = 0",
                               drop_family(twice, SymbolKind::H1), GradedPolynomial(n)));
  }
  return out;
}

std::vector<IdentityVerdict> lie_bracket_identity(const SymplecticConvention& conv) {
  const int n = conv.n();
  const Scalar i = Scalar::i();
  const GradedPolynomial f1 = symbol(n, SymbolKind::H1);
  const GradedPolynomial f2 = symbol(n, SymbolKind::H2);
  const GradedPolynomial ih1 = i * hamiltonian_from_function(conv, f1);
  const GradedPolynomial ih2 = i * hamiltonian_from_function(conv, f2);
  const GradedPolynomial h12 = hamiltonian_from_function(conv, poisson_bracket(conv, f1, f2));
  const GradedPolynomial lhs = commutator(ih1, ih2);

  // Lambda-linear parts alone: the classical vector-field bracket.
  auto lambda_part = [](const GradedPolynomial& p) {
    GradedPolynomial out(p.n());
    for (const auto& [word, coef] : p.terms()) {
      bool has = false;
      for (const Letter& l : word)
        if (!l.is_classical() && l.family() == Family::Lambda) has = true;
      if (has) out.add_term(word, coef);
    }
    return out;
  };
  const GradedPolynomial hh = hamiltonian_from_function(conv, poisson_bracket(conv, f1, f1));
  return {
      make_verdict("lie_bracket", "[iH1, iH2] = -i H_{H1,H2}", lhs, -i * h12),
      make_verdict("lie_bracket", "lambda sector", lambda_part(lhs), lambda_part(-i * h12)),
      make_verdict("lie_bracket", "{H1, H1} = 0", hh, GradedPolynomial(n)),
      make_verdict("lie_bracket", "[iH1, iH1] = 0", commutator(ih1, ih1), GradedPolynomial(n)),
  };
}

std::vector<IdentityVerdict> all_identities(const SymplecticConvention& conv) {
  const ChargeSet c = build_charges(conv);
  const GradedPolynomial h = hamiltonian_bfa(conv, SymbolKind::H1);
  const Scalar eps = Scalar::ratio(2, 7);
  std::vector<IdentityVerdict> out;
  auto append = [&out](std::vector<IdentityVerdict> vs) {
    for (auto& v : vs) out.push_back(std::move(v));
  };
  out.push_back(hermiticity(conv));
  append(charge_structure(conv, c));
  append(vanishing_k(c));
  append(ghost_grading(c, h));
  append(verify_conservation(c, h));
  append(brs_anomaly(conv, c, h));
  append(susy_algebra(conv, c, h));
  append(q1_action(conv, c, eps));
  append(q1_square_on_phi(conv, c, eps));
  append(lie_bracket_identity(conv));
  return out;
}

}  // namespace forge::bfa
