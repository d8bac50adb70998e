#include "doctest.h"

#include "forge/algebra.hpp"
#include "forge/errors.hpp"

using namespace forge;
using namespace forge::algebra;

TEST_CASE("lambda moves past phi with a -i contraction") {
  const GradedPolynomial p = lambda(1, 0) * phi(1, 0);
  CHECK(to_string(p) == "-i + φ^1 λ_1");
}

TEST_CASE("xi moves past pi with a +i contraction") {
  CHECK(to_string(xi(1, 0) * pi(1, 0)) == "i + π^1 ξ_1");
}

TEST_CASE("lambda differentiates classical symbols") {
  const GradedPolynomial p = lambda(1, 0) * symbol(1, SymbolKind::H1, {1});
  CHECK(to_string(p) == "H1_{2} λ_1 - i H1_{12}");
}

TEST_CASE("generators in different slots commute") {
  CHECK(commutator(xi(1, 0, 1), pi(1, 0, 2)).empty());
  CHECK_FALSE(commutator(xi(1, 0, 2), pi(1, 0, 2)).empty());
  CHECK(commutator(phi(2, 0), lambda(2, 1)).empty());
  CHECK(commutator(phi(1, 0), pi(1, 0)).empty());
}

TEST_CASE("commutator is antisymmetric on random polynomials") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 10; ++k) {
    const GradedPolynomial p = random_graded(rng, 2, 3, 3);
    const GradedPolynomial q = random_graded(rng, 2, 3, 3);
    CHECK(equals(commutator(p, q), -commutator(q, p)));
  }
}

TEST_CASE("normal ordering preserves the element") {
  // pi xi pi expanded by hand: pi (pi xi + i) = pi pi xi + i pi.
  const GradedPolynomial w = pi(1, 0) * xi(1, 0) * pi(1, 0);
  const GradedPolynomial want = pi(1, 0) * pi(1, 0) * xi(1, 0) + Scalar::i() * pi(1, 0);
  CHECK(equals(w, want));
  CHECK(normal_order(w).size() == 2);
}

TEST_CASE("dagger conjugates scalars and reverses words") {
  const GradedPolynomial p = Scalar::i() * (pi(1, 0) * xi(1, 1));
  const GradedPolynomial want = -Scalar::i() * (xi(1, 1) * pi(1, 0));
  CHECK(equals(dagger(p), want));
}

TEST_CASE("differentiate applies the Leibniz rule to classical functions") {
  const GradedPolynomial h = symbol(1, SymbolKind::H1);
  const GradedPolynomial f = phi(1, 0) * phi(1, 0) * h;
  const GradedPolynomial want =
      Scalar(2) * phi(1, 0) * h + phi(1, 0) * phi(1, 0) * symbol(1, SymbolKind::H1, {0});
  CHECK(equals(differentiate(f, 0), want));
  CHECK(equals(differentiate(f, 1), phi(1, 0) * phi(1, 0) * symbol(1, SymbolKind::H1, {1})));
  CHECK(is_classical_function(f));
  CHECK_FALSE(is_classical_function(f * lambda(1, 0)));
}

TEST_CASE("mixed derivative symbols are symmetric") {
  CHECK(equals(symbol(2, SymbolKind::H1, {0, 3}), symbol(2, SymbolKind::H1, {3, 0})));
  CHECK_FALSE(equals(symbol(2, SymbolKind::H1, {0}), symbol(2, SymbolKind::H2, {0})));
}

TEST_CASE("drop_family removes one symbol family") {
  const GradedPolynomial p = symbol(1, SymbolKind::H1, {0}) + symbol(1, SymbolKind::H2, {0}) * phi(1, 0);
  CHECK(equals(drop_family(p, SymbolKind::H2), symbol(1, SymbolKind::H1, {0})));
}

TEST_CASE("polynomials over different dimensions do not mix") {
  CHECK_THROWS_AS(phi(1, 0) + phi(2, 0), ConfigError);
}
