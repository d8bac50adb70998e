#include "checks.hpp"

#include "forge/errors.hpp"
#include "forge/forms.hpp"

#include <fstream>

namespace forge::suites {

using algebra::GradedPolynomial;
using forms::FormField;

namespace {

constexpr int kMaxDegree = 3;  // polynomial degree of random P and H
constexpr int kTerms = 3;

struct Tally {
  int total = 0;
  int failed = 0;
  std::string first;
  void add(bool ok, const std::string& what) {
    ++total;
    if (ok) return;
    if (failed < 3) first += (first.empty() ? "" : "; ") + what;
    ++failed;
  }
  Outcome outcome(const std::string& what) const {
    std::string d = fmt("%d/%d %s agree", total - failed, total, what.c_str());
    if (failed) d += "; failing: " + first;
    return exact(failed == 0 && total > 0, d);
  }
};

Polynomial random_h(Context& ctx, int n) {
  return random_polynomial(ctx.rng(), 2 * n, kMaxDegree, 4);
}

FormField random_p(Context& ctx, int n, int m) {
  return forms::random_form(ctx.rng(), n, m, kMaxDegree, kTerms);
}

FormField basis_one_form(int n, int a) {
  FormField f(n, 1);
  f.set_component({a}, Polynomial::constant(2 * n, 1));
  return f;
}

std::string tag(int n, int m, int trial) { return fmt("n=%d m=%d trial %d", n, m, trial); }

Outcome wedge_check(Context& ctx) {
  Tally t;
  const FormField e12 = forms::wedge(basis_one_form(1, 0), basis_one_form(1, 1));
  t.add(e12.at({0, 1}) == Polynomial::constant(2, Rational(1, 2)) &&
            e12.at({1, 0}) == Polynomial::constant(2, Rational(-1, 2)),
        "dphi1 ^ dphi2 components");
  for (int n = 1; n <= ctx.config().n; ++n)
    for (int k = 0; k < ctx.config().trials; ++k) {
      const FormField p = random_p(ctx, n, 1);
      t.add(forms::wedge(p, p).is_zero(), "P^P " + tag(n, 1, k));
      FormField f(n, 0);
      const Polynomial fc = random_polynomial(ctx.rng(), 2 * n, 2, 2);
      f.set_component(std::span<const int>(), fc);
      const FormField fp = forms::wedge(f, p);
      bool scaled = true;
      for (std::size_t i = 0; i < p.size(); ++i) scaled = scaled && fp.entry(i) == fc * p.entry(i);
      t.add(scaled, "f^P " + tag(n, 1, k));
      const int dq = n == 1 ? 1 : 2;
      const FormField q = random_p(ctx, n, dq);
      const FormField pq = forms::wedge(p, q);
      FormField qp = forms::wedge(q, p);
      if (dq % 2 == 1) {
        bool anti = true;
        for (std::size_t i = 0; i < pq.size(); ++i) anti = anti && pq.entry(i) == -qp.entry(i);
        t.add(anti, "graded commutativity " + tag(n, dq, k));
      } else {
        t.add(pq == qp, "graded commutativity " + tag(n, dq, k));
      }
      if (n == 2) {
        const FormField r = random_p(ctx, n, 1);
        t.add(forms::wedge(forms::wedge(p, r), q) == forms::wedge(p, forms::wedge(r, q)),
              "associativity " + tag(n, 4, k));
      }
    }
  return t.outcome("wedge properties");
}

Outcome lie_direct_examples(Context& ctx) {
  Tally t;
  const SymplecticConvention conv(1, ctx.config().ordering);
  // H = (q^2 + p^2)/2 and F = dq: the flow rotates dq into dp.
  Polynomial h(2);
  h.add_term({2, 0}, Rational(1, 2));
  h.add_term({0, 2}, Rational(1, 2));
  const int q = conv.from_qp(0);
  const int p = conv.from_qp(1);
  FormField f(1, 1);
  f.set_component({q}, Polynomial::constant(2, 1));
  const FormField lf = forms::lie_derivative_direct(conv, f, h);
  t.add(lf.at({q}).is_zero() && lf.at({p}) == Polynomial::constant(2, 1), "L dq = dp for the oscillator");

  for (int n = 1; n <= ctx.config().n; ++n) {
    const SymplecticConvention c(n, ctx.config().ordering);
    for (int k = 0; k < ctx.config().trials; ++k) {
      const Polynomial hh = random_h(ctx, n);
      const Polynomial g = random_polynomial(ctx.rng(), 2 * n, kMaxDegree, kTerms);
      FormField g0(n, 0);
      g0.set_component(std::span<const int>(), g);
      // Zero-form: the Liouville derivative, written out independently.
      Polynomial want(2 * n);
      for (int a = 0; a < 2 * n; ++a)
        for (int b = 0; b < 2 * n; ++b)
          if (c.upper(a, b) != 0) want += Rational(c.upper(a, b)) * hh.derivative(b) * g.derivative(a);
      t.add(forms::lie_derivative_direct(c, g0, hh).at(std::span<const int>()) == want, tag(n, 0, k));
    }
  }
  return t.outcome("direct Lie derivative examples");
}

Outcome symplectic_form_invariant(Context& ctx) {
  Tally t;
  for (int n = 1; n <= ctx.config().n; ++n) {
    const SymplecticConvention conv(n, ctx.config().ordering);
    FormField w(n, 2);
    for (int a = 0; a < 2 * n; ++a)
      for (int b = a + 1; b < 2 * n; ++b)
        if (conv.lower(a, b) != 0) w.set_component({a, b}, Polynomial::constant(2 * n, conv.lower(a, b)));
    for (int k = 0; k < ctx.config().trials; ++k) {
      const Polynomial h = random_h(ctx, n);
      t.add(forms::lie_derivative_direct(conv, w, h).is_zero(), "direct " + tag(n, 2, k));
      if (k < 3) t.add(forms::lie_via_commutator(conv, w, h).is_zero(), "commutator " + tag(n, 2, k));
    }
  }
  return t.outcome("invariance cases");
}

Outcome multiform_hermiticity(Context& ctx) {
  Tally t;
  for (int n = 1; n <= ctx.config().n; ++n) {
    const SymplecticConvention conv(n, ctx.config().ordering);
    const GradedPolynomial hs = forms::multiform_hamiltonian(conv, algebra::symbol(n, algebra::SymbolKind::H1));
    t.add(algebra::equals(hs, algebra::dagger(hs)), fmt("symbolic H, n=%d", n));
    for (int k = 0; k < 5; ++k) {
      const GradedPolynomial hp = forms::multiform_hamiltonian(conv, random_h(ctx, n));
      t.add(algebra::equals(hp, algebra::dagger(hp)), fmt("polynomial H, n=%d trial %d", n, k));
    }
  }
  return t.outcome("hermiticity cases");
}

Outcome multiform_structure(Context& ctx) {
  using namespace algebra;
  Tally t;
  for (int n = 1; n <= ctx.config().n; ++n) {
    const SymplecticConvention conv(n, ctx.config().ordering);
    const int d = 2 * n;
    // Written out term by term: one lambda term plus one pi-xi term per slot.
    GradedPolynomial want(n);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        if (conv.upper(a, b) == 0) continue;
        want += Scalar(conv.upper(a, b)) * lambda(n, a) * symbol(n, SymbolKind::H1, {b});
      }
    for (int slot = 1; slot <= d; ++slot)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          for (int e = 0; e < d; ++e) {
            if (conv.upper(b, e) == 0) continue;
            want -= Scalar(conv.upper(b, e)) * pi(n, a, slot) * symbol(n, SymbolKind::H1, {e, a}) *
                    xi(n, b, slot);
          }
    const GradedPolynomial got = forms::multiform_hamiltonian(conv, symbol(n, SymbolKind::H1));
    t.add(equals(got, want), fmt("n=%d against the slot expansion", n));
    int slots = 0;
    const GradedPolynomial ordered = normal_order(got);
    for (int slot = 1; slot <= d; ++slot) {
      bool seen = false;
      for (const auto& [w, c] : ordered.terms())
        for (const auto& l : w)
          if (!l.is_classical() && l.family() == Family::Pi && l.copy() == slot) seen = true;
      slots += seen;
    }
    t.add(slots == d, fmt("n=%d uses %d slots", n, slots));
  }
  return t.outcome("structure cases");
}

Outcome lift_roundtrip(Context& ctx) {
  using namespace algebra;
  Tally t;
  for (int n = 1; n <= ctx.config().n; ++n) {
    const int d = 2 * n;
    // Zero-form: no pi factors at all.
    const Polynomial f = random_polynomial(ctx.rng(), d, kMaxDegree, kTerms);
    FormField f0(n, 0);
    f0.set_component(std::span<const int>(), f);
    t.add(equals(forms::lift_form(f0), f.to_graded(n)), fmt("0-form image, n=%d", n));
    // One-form: C_d times the sum of pi^d over every slot.
    const FormField c = random_p(ctx, n, 1);
    GradedPolynomial want(n);
    for (int a = 0; a < d; ++a)
      for (int slot = 1; slot <= d; ++slot) want += c.at({a}).to_graded(n) * pi(n, a, slot);
    t.add(equals(forms::lift_form(c), want), fmt("1-form image, n=%d", n));
    for (int m = 0; m <= d; ++m)
      for (int k = 0; k < 5; ++k) {
        const FormField p = random_p(ctx, n, m);
        t.add(forms::extract_form(forms::lift_form(p), m) == p, "round trip " + tag(n, m, k));
      }
  }
  return t.outcome("lift cases");
}

Outcome extract_rejects(Context& ctx) {
  Tally t;
  for (int n = 1; n <= ctx.config().n; ++n) {
    const SymplecticConvention conv(n, ctx.config().ordering);
    // A linear H keeps only lambda terms; a quadratic one adds the pi-xi terms.
    Polynomial lin(2 * n);
    lin.add_term(std::vector<int>(2 * n, 0), 1);
    lin = lin + Polynomial::variable(2 * n, 0);
    const Polynomial quad = random_h(ctx, n) + Polynomial::variable(2 * n, 0) * Polynomial::variable(2 * n, 1);
    for (const Polynomial* hp : std::initializer_list<const Polynomial*>{&lin, &quad}) {
      bool threw_h = false;
      try {
        forms::extract_form(forms::multiform_hamiltonian(conv, *hp), 1);
      } catch (const StructuralError&) {
        threw_h = true;
      }
      t.add(threw_h, fmt("extended Hamiltonian of degree %d rejected, n=%d", hp->degree(), n));
    }
    const GradedPolynomial h = forms::multiform_hamiltonian(conv, quad);
    bool threw = false;
    std::string msg;
    try {
      forms::extract_form(h, 1);
    } catch (const StructuralError& e) {
      threw = true;
      msg = e.what();
    }
    t.add(threw && !msg.empty(), fmt("extended Hamiltonian rejected, n=%d", n));
    // A form lifted at degree 1 is not a 2-form.
    bool wrong_degree = false;
    try {
      forms::extract_form(forms::lift_form(random_p(ctx, n, 1)), 2);
    } catch (const StructuralError&) {
      wrong_degree = true;
    }
    t.add(wrong_degree, fmt("degree mismatch rejected, n=%d", n));
  }
  return t.outcome("rejections");
}

Outcome equivalence(Context& ctx, int n) {
  Tally t;
  const SymplecticConvention conv(n, ctx.config().ordering);
  const int pairs = std::max(ctx.config().trials, 20);
  for (int m = 0; m <= 2 * n; ++m)
    for (int k = 0; k < pairs; ++k) {
      const FormField p = random_p(ctx, n, m);
      const Polynomial h = random_h(ctx, n);
      const FormField direct = forms::lie_derivative_direct(conv, p, h);
      const FormField via = forms::lie_via_commutator(conv, p, h);
      t.add(direct == via, tag(n, m, k));
      std::string path;
      if (k == 0 && ctx.csv_path(fmt("form_n%d_m%d.csv", n, m), path)) {
        std::ofstream os(path);
        forms::write_form_csv(os, via);
      }
    }
  return t.outcome("(P, H) pairs");
}

Outcome two_form_bracket(Context& ctx) {
  Tally t;
  for (int n = 1; n <= ctx.config().n; ++n) {
    const SymplecticConvention conv(n, ctx.config().ordering);
    const int d = 2 * n;
    for (int k = 0; k < ctx.config().trials; ++k) {
      const FormField f = random_p(ctx, n, 2);
      const Polynomial h = random_h(ctx, n);
      FormField want(n, 2);
      for (int dd = 0; dd < d; ++dd)
        for (int e = dd + 1; e < d; ++e) {
          Polynomial s(d);
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
              const int w = conv.upper(a, b);
              if (w == 0) continue;
              const Polynomial hb = h.derivative(b);
              Polynomial term = hb * f.at({dd, e}).derivative(a);
              if (a != e) term += hb.derivative(dd) * f.at({a, e});
              if (a != dd) term += hb.derivative(e) * f.at({dd, a});
              s += Rational(w) * term;
            }
          want.set_component({dd, e}, s);
        }
      t.add(forms::lie_via_commutator(conv, f, h) == want, tag(n, 2, k));
    }
  }
  return t.outcome("two-form brackets");
}

Outcome one_form_bracket(Context& ctx) {
  Tally t;
  for (int n = 1; n <= ctx.config().n; ++n) {
    const SymplecticConvention conv(n, ctx.config().ordering);
    const int d = 2 * n;
    for (int k = 0; k < ctx.config().trials; ++k) {
      const FormField c = random_p(ctx, n, 1);
      const Polynomial h = random_h(ctx, n);
      FormField want(n, 1);
      for (int dd = 0; dd < d; ++dd) {
        Polynomial s(d);
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) {
            const int w = conv.upper(a, b);
            if (w == 0) continue;
            s += Rational(w) * c.at({dd}).derivative(a) * h.derivative(b);
            s += Rational(w) * h.derivative(b).derivative(dd) * c.at({a});
          }
        want.set_component({dd}, s);
      }
      t.add(forms::lie_via_commutator(conv, c, h) == want, tag(n, 1, k));
    }
  }
  return t.outcome("one-form brackets");
}

Outcome leibniz(Context& ctx) {
  Tally t;
  for (int n = 1; n <= ctx.config().n; ++n) {
    const SymplecticConvention conv(n, ctx.config().ordering);
    for (int k = 0; k < ctx.config().trials; ++k) {
      const int dp = 1;
      const int dq = n == 1 ? 1 : 1 + k % 3;
      const FormField p = random_p(ctx, n, dp);
      const FormField q = random_p(ctx, n, dq);
      const Polynomial h = random_h(ctx, n);
      const FormField lhs = forms::lie_derivative_direct(conv, forms::wedge(p, q), h);
      const FormField a = forms::wedge(forms::lie_derivative_direct(conv, p, h), q);
      const FormField b = forms::wedge(p, forms::lie_derivative_direct(conv, q, h));
      bool ok = true;
      for (std::size_t i = 0; i < lhs.size(); ++i) ok = ok && lhs.entry(i) == a.entry(i) + b.entry(i);
      t.add(ok, tag(n, dp + dq, k));
    }
  }
  return t.outcome("Leibniz cases");
}

Outcome placement_independence(Context& ctx) {
  Tally t;
  for (int n = 1; n <= ctx.config().n; ++n) {
    const SymplecticConvention conv(n, ctx.config().ordering);
    const int d = 2 * n;
    for (int m = 1; m <= d; ++m)
      for (int k = 0; k < 3; ++k) {
        const FormField p = random_p(ctx, n, m);
        const Polynomial h = random_h(ctx, n);
        const FormField base = forms::lie_derivative_direct(conv, p, h);
        // First m slots, last m slots, and every other slot where it fits.
        std::vector<std::vector<int>> layouts(2);
        for (int i = 0; i < m; ++i) {
          layouts[0].push_back(i + 1);
          layouts[1].push_back(d - m + i + 1);
        }
        if (2 * m - 1 <= d) {
          layouts.emplace_back();
          for (int i = 0; i < m; ++i) layouts.back().push_back(2 * i + 1);
        }
        for (const auto& s : layouts)
          t.add(forms::lie_via_commutator_at(conv, p, h, s) == base, tag(n, m, k));
      }
  }
  return t.outcome("placements");
}

Outcome bracket_representation(Context& ctx) {
  Tally t;
  for (int n = 1; n <= ctx.config().n; ++n) {
    const SymplecticConvention conv(n, ctx.config().ordering);
    for (int m = 0; m <= 2 * n; ++m)
      for (int k = 0; k < 2; ++k) {
        const Polynomial h1 = random_polynomial(ctx.rng(), 2 * n, kMaxDegree, 3);
        const Polynomial h2 = random_polynomial(ctx.rng(), 2 * n, kMaxDegree, 3);
        const FormField p = random_p(ctx, n, m);
        t.add(forms::bracket_representation_holds(conv, h1, h2, p), tag(n, m, k));
      }
  }
  return t.outcome("bracket representation cases");
}

}  // namespace

std::vector<CheckDef> form_checks() {
  return {
      {"forms.wedge", "forms", "Eq. 5.2", wedge_check},
      {"forms.lie_direct_examples", "forms", "Eq. 4.10", lie_direct_examples},
      {"forms.symplectic_form_invariant", "forms", "Eq. D6", symplectic_form_invariant},
      {"forms.multiform_hermiticity", "forms", "Eq. E2", multiform_hermiticity},
      {"forms.multiform_structure", "forms", "Eq. 5.13", multiform_structure},
      {"forms.lift_roundtrip", "forms", "Eq. 5.15", lift_roundtrip},
      {"forms.extract_rejects", "forms", "Eq. 5.15", extract_rejects},
      {"forms.equivalence_n1", "forms", "Eq. 5.16", [](Context& c) { return equivalence(c, 1); }},
      {"forms.equivalence_n2", "forms", "Eq. D6",
       [](Context& c) {
         if (c.config().n < 2) return exact(true, "skipped: configured n < 2");
         return equivalence(c, 2);
       }},
      {"forms.two_form_bracket", "forms", "Eq. 5.9", two_form_bracket},
      {"forms.one_form_bracket", "forms", "Eq. 5.12", one_form_bracket},
      {"forms.leibniz", "forms", "Eq. D6", leibniz},
      {"forms.placement_independence", "forms", "App. D", placement_independence},
      {"forms.bracket_representation", "forms", "Eq. 4.14", bracket_representation},
  };
}

}  // namespace forge::suites
