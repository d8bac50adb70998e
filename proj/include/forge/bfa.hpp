#pragma once

// Hamiltonian and charge family of the bosonic extended phase space, and the
// commutator identities they satisfy.

#include "forge/algebra.hpp"
#include "forge/convention.hpp"

#include <string>
#include <vector>

namespace forge::bfa {

using algebra::GradedPolynomial;
using algebra::SymbolKind;

/// lambda_a w^{ab} H_b - pi^l w^{ab} H_{bl} xi_a for a free symbol family,
/// normal ordered.
GradedPolynomial hamiltonian_bfa(const SymplecticConvention& conv, SymbolKind family);

/// Same construction with H replaced by an arbitrary classical function F
/// (explicit phi polynomial, symbol products, or a mix).
GradedPolynomial hamiltonian_from_function(const SymplecticConvention& conv,
                                           const GradedPolynomial& f);

/// {F, G} = d_b F w^{bc} d_c G.
GradedPolynomial poisson_bracket(const SymplecticConvention& conv, const GradedPolynomial& f,
                                 const GradedPolynomial& g);

struct ChargeSet {
  int n = 0;
  GradedPolynomial Qg{1}, N{1}, Nbar{1};
  GradedPolynomial Q{1}, Qbar{1}, QH{1}, QHbar{1};
  GradedPolynomial Q1{1}, Q2{1};
  // Bosonic counterparts of the K charges; both vanish identically.
  GradedPolynomial K{1}, Kbar{1};
};

/// All charges built with the H1 symbol family.
ChargeSet build_charges(const SymplecticConvention& conv);

struct IdentityVerdict {
  std::string check_id;
  std::string label;
  GradedPolynomial lhs{1};
  GradedPolynomial rhs{1};
  bool pass = false;
};

IdentityVerdict make_verdict(std::string check_id, std::string label, GradedPolynomial lhs,
                             GradedPolynomial rhs);

IdentityVerdict hermiticity(const SymplecticConvention& conv);
std::vector<IdentityVerdict> charge_structure(const SymplecticConvention& conv, const ChargeSet& c);
std::vector<IdentityVerdict> vanishing_k(const ChargeSet& c);
std::vector<IdentityVerdict> ghost_grading(const ChargeSet& c, const GradedPolynomial& h);
std::vector<IdentityVerdict> verify_conservation(const ChargeSet& c, const GradedPolynomial& h);
std::vector<IdentityVerdict> brs_anomaly(const SymplecticConvention& conv, const ChargeSet& c,
                                         const GradedPolynomial& h);
std::vector<IdentityVerdict> susy_algebra(const SymplecticConvention& conv, const ChargeSet& c,
                                          const GradedPolynomial& h);
/// Action of eps*Q1 on each generator; eps is a fixed nonzero rational.
std::vector<IdentityVerdict> q1_action(const SymplecticConvention& conv, const ChargeSet& c,
                                       const Scalar& eps);
std::vector<IdentityVerdict> q1_square_on_phi(const SymplecticConvention& conv, const ChargeSet& c,
                                              const Scalar& eps);
std::vector<IdentityVerdict> lie_bracket_identity(const SymplecticConvention& conv);

/// Every verdict above for one convention.
std::vector<IdentityVerdict> all_identities(const SymplecticConvention& conv);

}  // namespace forge::bfa
