#include "doctest.h"

#include "forge/bfa.hpp"

using namespace forge;
using namespace forge::algebra;

namespace {

Scalar w(const SymplecticConvention& c, int a, int b) { return Scalar(static_cast<long>(c.upper(a, b))); }

}  // namespace

TEST_CASE("Heisenberg equations of the extended Hamiltonian") {
  for (auto ordering : {PhaseOrdering::QP, PhaseOrdering::PQ}) {
    const SymplecticConvention conv(2, ordering);
    const int n = 2;
    const GradedPolynomial h = bfa::hamiltonian_bfa(conv, SymbolKind::H1);
    for (int c = 0; c < 4; ++c) {
      // phi-dot = w grad H and pi-dot = w K pi, written out directly.
      GradedPolynomial phidot(n), pidot(n);
      for (int b = 0; b < 4; ++b) {
        phidot += w(conv, c, b) * symbol(n, SymbolKind::H1, {b});
        for (int l = 0; l < 4; ++l) pidot += w(conv, c, b) * symbol(n, SymbolKind::H1, {b, l}) * pi(n, l);
      }
      CHECK(equals(Scalar::i() * commutator(h, phi(n, c)), phidot));
      CHECK(equals(Scalar::i() * commutator(h, pi(n, c)), pidot));
    }
  }
}

TEST_CASE("extended Hamiltonian is self-adjoint") {
  for (int n : {1, 2}) {
    const SymplecticConvention conv(n);
    const GradedPolynomial h = bfa::hamiltonian_bfa(conv, SymbolKind::H1);
    CHECK(equals(h, dagger(h)));
  }
}

TEST_CASE("Poisson bracket of canonical coordinates") {
  const SymplecticConvention qp(1, PhaseOrdering::QP);
  const GradedPolynomial q = phi(1, 0);
  const GradedPolynomial p = phi(1, 1);
  CHECK(equals(bfa::poisson_bracket(qp, q, p), GradedPolynomial::constant(1, 1)));
  CHECK(equals(bfa::poisson_bracket(qp, p, q), GradedPolynomial::constant(1, -1)));
}

TEST_CASE("ghost charge counts pi with -1 and xi with +1") {
  const SymplecticConvention conv(1);
  const bfa::ChargeSet c = bfa::build_charges(conv);
  CHECK(equals(commutator(c.Qg, pi(1, 0)), -pi(1, 0)));
  CHECK(equals(commutator(c.Qg, xi(1, 1)), xi(1, 1)));
  CHECK(commutator(c.Qg, phi(1, 0)).empty());
}

TEST_CASE("every identity verdict holds in both orderings") {
  for (auto ordering : {PhaseOrdering::QP, PhaseOrdering::PQ})
    for (int n : {1, 2}) {
      const auto verdicts = bfa::all_identities(SymplecticConvention(n, ordering));
      CHECK(verdicts.size() > 40);
      for (const auto& v : verdicts) {
        INFO(v.check_id << ": " << v.label);
        CHECK(v.pass);
      }
    }
}

TEST_CASE("a wrong right-hand side is reported as failing") {
  const SymplecticConvention conv(1);
  const bfa::ChargeSet c = bfa::build_charges(conv);
  const auto v = bfa::make_verdict("x", "wrong", commutator(c.Qg, pi(1, 0)), pi(1, 0));
  CHECK_FALSE(v.pass);
}
