#include "doctest.h"

#include "forge/errors.hpp"
#include "forge/forms.hpp"

#include <sstream>

using namespace forge;
using forms::FormField;

namespace {

Polynomial constant(int nvars, long c) { return Polynomial::constant(nvars, Rational(c)); }

FormField dphi(int n, int a) {
  FormField f(n, 1);
  f.set_component({a}, constant(2 * n, 1));
  return f;
}

}  // namespace

TEST_CASE("set_component fills permuted entries with signs") {
  FormField f(2, 3);
  f.set_component({0, 2, 3}, constant(4, 5));
  CHECK(f.at({2, 0, 3}) == constant(4, -5));
  CHECK(f.at({3, 2, 0}) == constant(4, -5));
  CHECK(f.at({2, 3, 0}) == constant(4, 5));
  CHECK(f.at({0, 0, 3}).is_zero());
  CHECK(f.is_antisymmetric());
}

TEST_CASE("degree above 2n is rejected") {
  CHECK_THROWS(FormField(1, 3));
  CHECK_THROWS(forms::wedge(dphi(1, 0), forms::wedge(dphi(1, 0), dphi(1, 1))));
}

TEST_CASE("wedge of basis one-forms carries the alternation weight") {
  const FormField w = forms::wedge(dphi(1, 0), dphi(1, 1));
  CHECK(w.at({0, 1}) == Polynomial::constant(2, Rational(1, 2)));
  CHECK(w.at({1, 0}) == Polynomial::constant(2, Rational(-1, 2)));
  CHECK(forms::wedge(dphi(1, 0), dphi(1, 0)).is_zero());
}

TEST_CASE("Lie derivative along the squeeze flow H = q p") {
  // q-dot = q, p-dot = -p, so L dq = d(q) = dq and L dp = d(-p) = -dp.
  const SymplecticConvention conv(1);
  const Polynomial h = Polynomial::variable(2, 0) * Polynomial::variable(2, 1);
  for (int a : {0, 1}) {
    const FormField want = [&] {
      FormField f(1, 1);
      f.set_component({a}, constant(2, a == 0 ? 1 : -1));
      return f;
    }();
    CHECK(forms::lie_derivative_direct(conv, dphi(1, a), h) == want);
    CHECK(forms::lie_via_commutator(conv, dphi(1, a), h) == want);
  }
}

TEST_CASE("Lie derivative of a function is its Poisson bracket with H") {
  const SymplecticConvention conv(1);
  std::mt19937_64 rng(3);
  const Polynomial h = random_polynomial(rng, 2, 3, 4);
  const Polynomial g = random_polynomial(rng, 2, 3, 4);
  FormField f(1, 0);
  f.set_component(std::span<const int>(), g);
  // {g, H} = dg/dq dH/dp - dg/dp dH/dq in (q, p) order.
  const Polynomial want = g.derivative(0) * h.derivative(1) - g.derivative(1) * h.derivative(0);
  CHECK(forms::lie_derivative_direct(conv, f, h).at(std::span<const int>()) == want);
  CHECK(forms::poisson_bracket(conv, g, h) == want);
}

TEST_CASE("lift and extract are inverse for every degree") {
  std::mt19937_64 rng(5);
  for (int n : {1, 2})
    for (int m = 0; m <= 2 * n; ++m) {
      const FormField p = forms::random_form(rng, n, m, 2, 3);
      CHECK(forms::extract_form(forms::lift_form(p), m) == p);
    }
}

TEST_CASE("lift of a one-form places pi in every slot") {
  const FormField c = dphi(1, 1);
  const auto want = algebra::pi(1, 1, 1) + algebra::pi(1, 1, 2);
  CHECK(algebra::equals(forms::lift_form(c), want));
}

TEST_CASE("extract rejects operators that are not forms") {
  const SymplecticConvention conv(1);
  const Polynomial h = Polynomial::variable(2, 0) * Polynomial::variable(2, 0);
  CHECK_THROWS_AS(forms::extract_form(forms::multiform_hamiltonian(conv, h), 1), StructuralError);
  CHECK_THROWS_AS(forms::extract_form(algebra::lambda(1, 0), 0), StructuralError);
}

TEST_CASE("commutator and direct Lie derivatives agree on random data") {
  std::mt19937_64 rng(17);
  for (int n : {1, 2}) {
    const SymplecticConvention conv(n, PhaseOrdering::PQ);
    for (int m = 0; m <= 2 * n; ++m)
      for (int k = 0; k < 3; ++k) {
        const FormField p = forms::random_form(rng, n, m, 3, 3);
        const Polynomial h = random_polynomial(rng, 2 * n, 3, 4);
        CHECK(forms::lie_via_commutator(conv, p, h) == forms::lie_derivative_direct(conv, p, h));
      }
  }
}

TEST_CASE("form CSV lists one row per index tuple") {
  FormField f(1, 1);
  f.set_component({0}, Polynomial::variable(2, 1) * Rational(3, 4));
  std::ostringstream os;
  forms::write_form_csv(os, f);
  CHECK(os.str().find("3/4") != std::string::npos);
}
