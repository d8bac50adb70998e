#pragma once

#include "forge/algebra.hpp"
#include "forge/scalar.hpp"

#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace forge {

/// Commutative polynomial in nvars real variables with exact rational
/// coefficients. Variable i is phi^{i}.
class Polynomial {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, Rational>;

  explicit Polynomial(int nvars);
  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int i);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  void add_term(const Exponents& e, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Polynomial derivative(int i) const;
  double evaluate(std::span<const double> x) const;

  /// Monomial label such as "x1^2*x3", or "1" for the constant monomial.
  static std::string monomial_str(const Exponents& e);
  std::string str() const;

  /// The same function written in phi generators; nvars must equal 2n.
  algebra::GradedPolynomial to_graded(int n) const;

 private:
  int nvars_;
  TermMap terms_;
};

/// Random polynomial of total degree <= max_degree with at most `terms`
/// monomials and small integer-over-small-integer coefficients.
Polynomial random_polynomial(std::mt19937_64& rng, int nvars, int max_degree, int terms);

}  // namespace forge
