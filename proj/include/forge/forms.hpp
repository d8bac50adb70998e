#pragma once

// Differential forms with polynomial coefficients, computed two ways: the
// coordinate formula for the Lie derivative along a Hamiltonian flow, and the
// commutator with the multi-slot extended Hamiltonian acting on the operator
// image of the form.

#include "forge/algebra.hpp"
#include "forge/convention.hpp"
#include "forge/polynomial.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace forge::forms {

using algebra::GradedPolynomial;

/// Totally antisymmetric degree-m tensor with Polynomial entries over 2n
/// variables. Storage is dense: (2n)^m entries, tuple (a1..am) row-major.
class FormField {
 public:
  FormField(int n, int degree);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  int degree() const { return degree_; }
  std::size_t size() const { return entries_.size(); }

  const Polynomial& at(std::span<const int> idx) const;
  const Polynomial& at(std::initializer_list<int> idx) const {
    return at(std::span<const int>(idx.begin(), idx.size()));
  }
  const Polynomial& entry(std::size_t flat) const { return entries_[flat]; }
  std::vector<int> tuple(std::size_t flat) const;

  /// Sets P_{idx} and every permuted entry with the permutation sign.
  /// Indices must be distinct.
  void set_component(std::span<const int> idx, const Polynomial& value);
  void set_component(std::initializer_list<int> idx, const Polynomial& value) {
    set_component(std::span<const int>(idx.begin(), idx.size()), value);
  }

  bool is_antisymmetric() const;
  bool is_zero() const;

  friend bool operator==(const FormField& a, const FormField& b) {
    return a.n_ == b.n_ && a.degree_ == b.degree_ && a.entries_ == b.entries_;
  }

 private:
  friend FormField make_raw(int n, int degree);
  std::size_t flat(std::span<const int> idx) const;
  int n_;
  int degree_;
  std::vector<Polynomial> entries_;
};

/// Alternation of the tensor product, A = (1/k!) sum sgn(sigma) sigma.
FormField wedge(const FormField& p, const FormField& q);

/// Coordinate Lie derivative along h^a = w^{ab} d_b H.
FormField lie_derivative_direct(const SymplecticConvention& conv, const FormField& p,
                                const Polynomial& h);

/// Random antisymmetric form with random polynomial independent components.
FormField random_form(std::mt19937_64& rng, int n, int degree, int max_degree, int terms);

/// lambda_a w^{ab} F_b - sum_i pi^a_(i) w^{be} F_{ea} xi_b^(i), i = 1..2n,
/// normal ordered. F is any classical function.
GradedPolynomial multiform_hamiltonian(const SymplecticConvention& conv, const GradedPolynomial& f);
GradedPolynomial multiform_hamiltonian(const SymplecticConvention& conv, const Polynomial& h);

/// Operator image of the form: one term per increasing placement of its m
/// pi factors among the 2n slots.
GradedPolynomial lift_form(const FormField& p);
/// Image with the pi factors in the given slots only (1-based copy labels).
GradedPolynomial lift_form_at(const FormField& p, std::span<const int> slots);

/// Inverse of lift_form. Throws StructuralError naming the first word that
/// does not fit, or if placements disagree.
FormField extract_form(const GradedPolynomial& op, int degree);
/// Inverse of lift_form_at for one fixed placement.
FormField extract_form_at(const GradedPolynomial& op, std::span<const int> slots);

/// extract_form(i[H, lift_form(P)]).
FormField lie_via_commutator(const SymplecticConvention& conv, const FormField& p,
                             const Polynomial& h);
/// Same with the form lifted into one explicit placement.
FormField lie_via_commutator_at(const SymplecticConvention& conv, const FormField& p,
                                const Polynomial& h, std::span<const int> slots);

Polynomial poisson_bracket(const SymplecticConvention& conv, const Polynomial& f,
                           const Polynomial& g);

/// [[iH1, iH2], P] == [-i H_{H1,H2}, P] on the lifted form.
bool bracket_representation_holds(const SymplecticConvention& conv, const Polynomial& h1,
                                  const Polynomial& h2, const FormField& p);

/// CSV: one row per index tuple, one column per monomial, values "p/q".
void write_form_csv(std::ostream& os, const FormField& p);

}  // namespace forge::forms
