#pragma once

// Computer algebra for the bosonic extended phase space.
//
// Polynomials live in the free algebra generated by phi^a, pi^a, xi_a, lambda_a
// (pi and xi optionally carrying a tensor-slot copy label) and by commuting
// classical symbols H_S = d_S H. Normal ordering rewrites every word into the
// canonical order
//
//     classical < phi < pi < xi < lambda      (then copy, then index)
//
// using exactly
//
//     [phi^a, lambda_b] = i delta^a_b
//     [xi_a, pi^b]      = i delta^b_a        (same copy only)
//     [lambda_a, H_S]   = -i H_{S+a}
//
// with every other pair commuting. Two polynomials are equal iff the normal
// ordered difference is empty.

#include "forge/scalar.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace forge::algebra {

enum class Family : std::uint8_t { Phi = 1, Pi = 2, Xi = 3, Lambda = 4 };

/// Two independent Hamiltonian-function families.
enum class SymbolKind : std::uint8_t { H1 = 0, H2 = 1 };

/// One factor of a word: either a generator or a classical derivative symbol.
///
/// Indices are zero-based internally and printed one-based. Copy label 0 means
/// "no copy"; copies 1..2n label the tensor slots of the multi-form space.
class Letter {
 public:
  static Letter generator(Family family, int index, int copy = 0);
  static Letter classical(SymbolKind kind, std::span<const int> derivatives);

  bool is_classical() const { return (key_ >> kClassShift) == 0; }
  Family family() const;
  int index() const;
  int copy() const;

  SymbolKind kind() const;
  int derivative_count(int a) const;
  /// Sorted multiset of derivative indices.
  std::vector<int> derivatives() const;
  int order() const;
  Letter differentiated(int a) const;

  /// Largest index mentioned by this letter, or -1 for an underived symbol.
  int max_index() const;

  std::uint64_t key() const { return key_; }
  auto operator<=>(const Letter&) const = default;

  std::string str() const;

 private:
  static constexpr int kClassShift = 60;
  static constexpr int kKindShift = 56;
  static constexpr int kMaxIndices = 12;
  explicit Letter(std::uint64_t key) : key_(key) {}
  std::uint64_t key_ = 0;
};

using Word = std::vector<Letter>;

/// True unless the pair is one of the three non-commuting combinations.
bool commutes(const Letter& x, const Letter& y);

/// Finite sum of scalar-weighted words for a fixed number n of degrees of freedom.
///
/// Like words are merged and zero coefficients dropped on insertion. A
/// polynomial is not normal-ordered unless it came out of normal_order().
class GradedPolynomial {
 public:
  using TermMap = std::map<Word, Scalar>;

  explicit GradedPolynomial(int n);

  static GradedPolynomial constant(int n, const Scalar& c);
  static GradedPolynomial monomial(int n, Word w, const Scalar& c = Scalar(1));

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  void add_term(const Word& w, const Scalar& c);

  GradedPolynomial& operator+=(const GradedPolynomial& o);
  GradedPolynomial& operator-=(const GradedPolynomial& o);
  GradedPolynomial& operator*=(const Scalar& c);

  friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b) { return a += b; }
  friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b) { return a -= b; }
  friend GradedPolynomial operator*(GradedPolynomial a, const Scalar& c) { return a *= c; }
  friend GradedPolynomial operator*(const Scalar& c, GradedPolynomial a) { return a *= c; }
  friend GradedPolynomial operator-(GradedPolynomial a) { return a *= Scalar(-1); }

 private:
  void check_compatible(const GradedPolynomial& o) const;
  void check_word(const Word& w) const;

  int n_;
  TermMap terms_;
};

// Generator and symbol factories (zero-based indices).
GradedPolynomial phi(int n, int a);
GradedPolynomial pi(int n, int a, int copy = 0);
GradedPolynomial xi(int n, int a, int copy = 0);
GradedPolynomial lambda(int n, int a);
GradedPolynomial symbol(int n, SymbolKind kind, std::initializer_list<int> derivatives = {});
GradedPolynomial symbol(int n, SymbolKind kind, std::span<const int> derivatives);

/// Free-algebra product; word order is preserved, nothing is reordered.
GradedPolynomial multiply(const GradedPolynomial& p, const GradedPolynomial& q);
inline GradedPolynomial operator*(const GradedPolynomial& p, const GradedPolynomial& q) {
  return multiply(p, q);
}

GradedPolynomial normal_order(const GradedPolynomial& p);

/// normal_order(pq - qp).
GradedPolynomial commutator(const GradedPolynomial& p, const GradedPolynomial& q);

/// Reverses words and conjugates scalars; every letter is self-adjoint.
GradedPolynomial dagger(const GradedPolynomial& p);

bool equals(const GradedPolynomial& p, const GradedPolynomial& q);

/// d/dphi^a of a classical function, i.e. a polynomial whose words contain
/// only phi generators and classical symbols. Leibniz rule across factors.
GradedPolynomial differentiate(const GradedPolynomial& f, int a);

/// Sets every classical symbol of the given family to zero.
GradedPolynomial drop_family(const GradedPolynomial& p, SymbolKind kind);

/// True if every word contains only phi generators and classical symbols.
bool is_classical_function(const GradedPolynomial& p);

/// Random polynomial of `terms` words of length <= max_length drawn from all
/// generators, H1 symbols with up to two derivatives, and small Gaussian
/// rational coefficients. Not normal ordered.
GradedPolynomial random_graded(std::mt19937_64& rng, int n, int terms, int max_length);

/// Canonical-form text, e.g. "-i H1_{11} π^1 ξ_1". Normal-orders first.
std::string to_string(const GradedPolynomial& p);

}  // namespace forge::algebra
