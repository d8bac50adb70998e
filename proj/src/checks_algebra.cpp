#include "checks.hpp"

#include "forge/algebra.hpp"
#include "forge/bfa.hpp"

namespace forge::suites {

using namespace algebra;

namespace {

std::vector<SymplecticConvention> conventions(const Context& ctx) {
  std::vector<SymplecticConvention> out;
  for (int n = 1; n <= ctx.config().n; ++n) out.emplace_back(n, ctx.config().ordering);
  return out;
}

/// Counts mismatches; records the first few descriptions.
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
    std::string d = fmt("%d/%d %s hold", total - failed, total, what.c_str());
    if (failed) d += "; failing: " + first;
    return exact(failed == 0 && total > 0, d);
  }
};

GradedPolynomial generator(int n, Family f, int a, int copy = 0) {
  return GradedPolynomial::monomial(n, {Letter::generator(f, a, copy)});
}

Scalar expected_bracket(Family fx, int ax, int cx, Family fy, int ay, int cy) {
  if (ax != ay || cx != cy) return Scalar(0);
  if (fx == Family::Phi && fy == Family::Lambda) return Scalar::i();
  if (fx == Family::Lambda && fy == Family::Phi) return -Scalar::i();
  if (fx == Family::Xi && fy == Family::Pi) return Scalar::i();
  if (fx == Family::Pi && fy == Family::Xi) return -Scalar::i();
  return Scalar(0);
}

Outcome commutation_table(Context& ctx) {
  Tally t;
  const Family fams[] = {Family::Phi, Family::Pi, Family::Xi, Family::Lambda};
  for (const auto& conv : conventions(ctx)) {
    const int n = conv.n();
    for (Family fx : fams)
      for (Family fy : fams)
        for (int a = 0; a < conv.dim(); ++a)
          for (int b = 0; b < conv.dim(); ++b) {
            const GradedPolynomial got = commutator(generator(n, fx, a), generator(n, fy, b));
            const GradedPolynomial want = GradedPolynomial::constant(n, expected_bracket(fx, a, 0, fy, b, 0));
            t.add(equals(got, want), Letter::generator(fx, a).str() + "," + Letter::generator(fy, b).str());
          }
  }
  return t.outcome("generator brackets");
}

Outcome copy_commutation(Context& ctx) {
  Tally t;
  const Family fams[] = {Family::Pi, Family::Xi};
  for (const auto& conv : conventions(ctx)) {
    const int n = conv.n();
    const int d = conv.dim();
    for (Family fx : fams)
      for (Family fy : fams)
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            for (int i = 1; i <= d; ++i)
              for (int j = 1; j <= d; ++j) {
                const GradedPolynomial got = commutator(generator(n, fx, a, i), generator(n, fy, b, j));
                const GradedPolynomial want =
                    GradedPolynomial::constant(n, expected_bracket(fx, a, i, fy, b, j));
                t.add(equals(got, want),
                      Letter::generator(fx, a, i).str() + "," + Letter::generator(fy, b, j).str());
              }
  }
  return t.outcome("slot-labelled brackets");
}

Outcome lambda_symbol(Context& ctx) {
  Tally t;
  for (const auto& conv : conventions(ctx)) {
    const int n = conv.n();
    const int d = conv.dim();
    std::vector<std::vector<int>> sets{{}};
    for (int x = 0; x < d; ++x) {
      sets.push_back({x});
      for (int y = x; y < d; ++y) sets.push_back({x, y});
    }
    for (int a = 0; a < d; ++a)
      for (const auto& s : sets) {
        std::vector<int> sa = s;
        sa.push_back(a);
        const GradedPolynomial got = commutator(lambda(n, a), symbol(n, SymbolKind::H1, std::span<const int>(s)));
        const GradedPolynomial want = -Scalar::i() * symbol(n, SymbolKind::H1, std::span<const int>(sa));
        t.add(equals(got, want), "lambda_" + std::to_string(a + 1));
      }
    // lambda_1 H_1 written out: H_1 lambda_1 - i H_11.
    const GradedPolynomial lhs = lambda(n, 0) * symbol(n, SymbolKind::H1, {0});
    const GradedPolynomial rhs =
        symbol(n, SymbolKind::H1, {0}) * lambda(n, 0) - Scalar::i() * symbol(n, SymbolKind::H1, {0, 0});
    t.add(equals(lhs, rhs), "lambda_1 H_1 reordering");
  }
  return t.outcome("lambda-symbol brackets");
}

Outcome jacobi_identity(Context& ctx) {
  Tally t;
  const int n = 1;
  for (int k = 0; k < ctx.config().trials; ++k) {
    const GradedPolynomial p = random_graded(ctx.rng(), n, 3, 3);
    const GradedPolynomial q = random_graded(ctx.rng(), n, 3, 3);
    const GradedPolynomial r = random_graded(ctx.rng(), n, 3, 3);
    const GradedPolynomial sum = commutator(commutator(p, q), r) + commutator(commutator(q, r), p) +
                                 commutator(commutator(r, p), q);
    t.add(normal_order(sum).empty(), "trial " + std::to_string(k));
  }
  return t.outcome("random Jacobi identities at n=1");
}

Outcome normal_order_idempotent(Context& ctx) {
  Tally t;
  for (const auto& conv : conventions(ctx))
    for (int k = 0; k < ctx.config().trials; ++k) {
      const GradedPolynomial p = random_graded(ctx.rng(), conv.n(), 4, 4);
      const GradedPolynomial once = normal_order(p);
      const GradedPolynomial twice = normal_order(once);
      t.add(once.terms() == twice.terms() && equals(p, once), "trial " + std::to_string(k));
    }
  return t.outcome("idempotence cases");
}

Outcome dagger_antiautomorphism(Context& ctx) {
  Tally t;
  for (const auto& conv : conventions(ctx))
    for (int k = 0; k < ctx.config().trials; ++k) {
      const GradedPolynomial p = random_graded(ctx.rng(), conv.n(), 3, 3);
      const GradedPolynomial q = random_graded(ctx.rng(), conv.n(), 3, 3);
      t.add(equals(dagger(p * q), dagger(q) * dagger(p)), "product, trial " + std::to_string(k));
      t.add(equals(dagger(dagger(p)), p), "involution, trial " + std::to_string(k));
    }
  const int n = 1;
  t.add(equals(dagger(Scalar::i() * phi(n, 0)), -Scalar::i() * phi(n, 0)), "dagger(i phi)");
  t.add(equals(dagger(pi(n, 0) * lambda(n, 0)), pi(n, 0) * lambda(n, 0)), "dagger(pi lambda)");
  return t.outcome("dagger properties");
}

Outcome symbol_contraction(Context& ctx) {
  Tally t;
  for (const auto& conv : conventions(ctx)) {
    GradedPolynomial s(conv.n());
    for (int a = 0; a < conv.dim(); ++a)
      for (int b = 0; b < conv.dim(); ++b)
        s += Scalar(conv.upper(a, b)) * symbol(conv.n(), SymbolKind::H1, {a, b});
    t.add(equals(s, GradedPolynomial(conv.n())), "n=" + std::to_string(conv.n()));
  }
  // Control: the commuting pair pi xi is distinct from xi pi.
  t.add(!equals(pi(1, 0) * xi(1, 0), xi(1, 0) * pi(1, 0)), "pi xi != xi pi");
  return t.outcome("contractions");
}

/// Runs the identity set for each n and keeps verdicts with the given ids.
Outcome verdicts(Context& ctx, const std::vector<std::string>& ids) {
  Tally t;
  for (const auto& conv : conventions(ctx)) {
    for (const auto& v : bfa::all_identities(conv)) {
      bool wanted = false;
      for (const auto& id : ids)
        if (v.check_id == id || v.check_id.rfind(id + ".", 0) == 0) wanted = true;
      if (wanted) t.add(v.pass, "n=" + std::to_string(conv.n()) + " " + v.label);
    }
  }
  return t.outcome("identities");
}

}  // namespace

std::vector<CheckDef> algebra_checks() {
  return {
      {"algebra.commutation_table", "algebra", "Eq. 3.1", commutation_table},
      {"algebra.copy_commutation", "algebra", "Eq. 5.8", copy_commutation},
      {"algebra.lambda_symbol", "algebra", "Eq. 3.7", lambda_symbol},
      {"algebra.jacobi_identity", "algebra", "Eq. 3.1", jacobi_identity},
      {"algebra.normal_order_idempotent", "algebra", "Eq. 3.1", normal_order_idempotent},
      {"algebra.dagger_antiautomorphism", "algebra", "Eq. 3.4", dagger_antiautomorphism},
      {"algebra.symbol_contraction", "algebra", "Eq. 3.7", symbol_contraction},
  };
}

std::vector<CheckDef> charge_checks() {
  auto by = [](std::vector<std::string> ids) {
    return [ids](Context& ctx) { return verdicts(ctx, ids); };
  };
  return {
      {"hermiticity_bfa", "charges", "Eq. 3.7", by({"hermiticity_bfa"})},
      {"charges.structure", "charges", "Eq. 4.18", by({"charges"})},
      {"k_vanish", "charges", "Eq. 4.20", by({"k_vanish"})},
      {"ghost_grading", "charges", "Eq. 4.17", by({"ghost_grading"})},
      {"conservation_Qg", "charges", "Eq. C1", by({"conservation_Qg"})},
      {"conservation_N", "charges", "Eq. C2", by({"conservation_N"})},
      {"conservation_Nbar", "charges", "Eq. C3", by({"conservation_Nbar"})},
      {"brs_anomaly", "charges", "Eq. 4.22", by({"brs_anomaly"})},
      {"anomaly_phi_commute", "charges", "Eq. 4.26", by({"anomaly_phi_commute"})},
      {"susy_algebra", "charges", "Eq. 4.31", by({"susy_algebra"})},
      {"q1_action", "charges", "Eq. C6", by({"q1_action"})},
      {"q1_square", "charges", "Eq. 4.35", by({"q1_square"})},
      {"lie_bracket", "charges", "Eq. 4.14", by({"lie_bracket"})},
  };
}

}  // namespace forge::suites
