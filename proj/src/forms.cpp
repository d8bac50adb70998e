#include "forge/forms.hpp"

#include "forge/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

namespace forge::forms {

using algebra::Family;
using algebra::Letter;
using algebra::Word;

namespace {

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int k = 0; k < exp; ++k) r *= static_cast<std::size_t>(base);
  return r;
}

int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

bool distinct(std::span<const int> idx) {
  std::vector<int> s(idx.begin(), idx.end());
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

Rational factorial(int k) {
  Rational r(1);
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

std::vector<std::vector<int>> increasing_subsets(int n_items, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> mask(n_items, 0);
  std::fill(mask.begin(), mask.begin() + k, 1);
  do {
    std::vector<int> s;
    for (int i = 0; i < n_items; ++i)
      if (mask[i]) s.push_back(i + 1);
    out.push_back(s);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  std::sort(out.begin(), out.end());
  return out;
}

void check_slots(const FormField& p, std::span<const int> slots) {
  if (static_cast<int>(slots.size()) != p.degree())
    throw ConfigError("placement must list one slot per form index");
  for (int s : slots)
    if (s < 1 || s > p.dim()) throw ConfigError("slot label out of range");
  if (!distinct(slots)) throw ConfigError("slots must be distinct");
}

}  // namespace

// ---------------------------------------------------------------------------
// FormField

FormField::FormField(int n, int degree) : n_(n), degree_(degree) {
  if (n < 1) throw ConfigError("form needs n >= 1");
  if (degree < 0 || degree > 2 * n) throw ConfigError("form degree must lie in [0, 2n]");
  entries_.assign(ipow(2 * n, degree), Polynomial(2 * n));
}

std::size_t FormField::flat(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != degree_) throw ConfigError("index tuple has wrong length");
  std::size_t f = 0;
  for (int a : idx) {
    if (a < 0 || a >= dim()) throw ConfigError("form index out of range");
    f = f * dim() + a;
  }
  return f;
}

std::vector<int> FormField::tuple(std::size_t flat_index) const {
  std::vector<int> idx(degree_);
  for (int k = degree_ - 1; k >= 0; --k) {
    idx[k] = static_cast<int>(flat_index % dim());
    flat_index /= dim();
  }
  return idx;
}

const Polynomial& FormField::at(std::span<const int> idx) const { return entries_[flat(idx)]; }

void FormField::set_component(std::span<const int> idx, const Polynomial& value) {
  if (!distinct(idx)) throw ConfigError("antisymmetric component needs distinct indices");
  std::vector<int> perm(idx.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> permuted(idx.size());
  do {
    for (std::size_t k = 0; k < perm.size(); ++k) permuted[k] = idx[perm[k]];
    entries_[flat(permuted)] = permutation_sign(perm) > 0 ? value : -value;
  } while (std::next_permutation(perm.begin(), perm.end()));
}

bool FormField::is_antisymmetric() const {
  for (std::size_t f = 0; f < entries_.size(); ++f) {
    std::vector<int> idx = tuple(f);
    for (int i = 0; i < degree_; ++i)
      for (int j = i + 1; j < degree_; ++j) {
        std::swap(idx[i], idx[j]);
        if (!(entries_[flat(idx)] == -entries_[f])) return false;
        std::swap(idx[i], idx[j]);
      }
  }
  return true;
}

bool FormField::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

FormField wedge(const FormField& p, const FormField& q) {
  if (p.n() != q.n()) throw ConfigError("wedge of forms over different dimensions");
  const int k = p.degree() + q.degree();
  if (k > p.dim()) throw ConfigError("wedge degree exceeds 2n");
  FormField out(p.n(), k);
  const Rational norm = 1 / factorial(k);
  std::vector<int> perm(k);
  std::vector<int> left(p.degree());
  std::vector<int> right(q.degree());
  for (std::size_t f = 0; f < out.size(); ++f) {
    const std::vector<int> idx = out.tuple(f);
    if (!distinct(idx)) continue;
    // Only increasing tuples are computed; set_component fills the rest.
    if (!std::is_sorted(idx.begin(), idx.end())) continue;
    Polynomial sum(p.dim());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (int i = 0; i < p.degree(); ++i) left[i] = idx[perm[i]];
      for (int i = 0; i < q.degree(); ++i) right[i] = idx[perm[p.degree() + i]];
      const Polynomial term = p.at(left) * q.at(right);
      if (permutation_sign(perm) > 0) sum += term;
      else sum -= term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.set_component(idx, sum * norm);
  }
  return out;
}

FormField lie_derivative_direct(const SymplecticConvention& conv, const FormField& p,
                                const Polynomial& h) {
  if (conv.n() != p.n() || h.nvars() != p.dim())
    throw ConfigError("form, Hamiltonian and convention disagree on dimension");
  const int d = p.dim();
  std::vector<Polynomial> grad;
  std::vector<std::vector<Polynomial>> hess(d);
  for (int b = 0; b < d; ++b) {
    grad.push_back(h.derivative(b));
    for (int c = 0; c < d; ++c) hess[b].push_back(grad[b].derivative(c));
  }
  // Flow vector h^a = w^{ab} d_b H and the matrix B^l_a = w^{le} d_e d_a H.
  std::vector<Polynomial> flow(d, Polynomial(d));
  std::vector<std::vector<Polynomial>> bmat(d, std::vector<Polynomial>(d, Polynomial(d)));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const int w = conv.upper(a, b);
      if (w == 0) continue;
      flow[a] += grad[b] * Rational(w);
      for (int c = 0; c < d; ++c) bmat[a][c] += hess[b][c] * Rational(w);
    }

  FormField out(p.n(), p.degree());
  for (std::size_t f = 0; f < out.size(); ++f) {
    std::vector<int> idx = out.tuple(f);
    if (!distinct(idx) || !std::is_sorted(idx.begin(), idx.end())) continue;
    Polynomial sum(d);
    const Polynomial& pa = p.at(idx);
    for (int a = 0; a < d; ++a)
      if (!flow[a].is_zero()) sum += flow[a] * pa.derivative(a);
    for (int i = 0; i < p.degree(); ++i) {
      const int ai = idx[i];
      for (int l = 0; l < d; ++l) {
        if (bmat[l][ai].is_zero()) continue;
        idx[i] = l;
        sum += p.at(idx) * bmat[l][ai];
        idx[i] = ai;
      }
    }
    out.set_component(idx, sum);
  }
  return out;
}

FormField random_form(std::mt19937_64& rng, int n, int degree, int max_degree, int terms) {
  FormField out(n, degree);
  for (std::size_t f = 0; f < out.size(); ++f) {
    const std::vector<int> idx = out.tuple(f);
    if (!distinct(idx) || !std::is_sorted(idx.begin(), idx.end())) continue;
    out.set_component(idx, random_polynomial(rng, 2 * n, max_degree, terms));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Operator side

GradedPolynomial multiform_hamiltonian(const SymplecticConvention& conv, const GradedPolynomial& f) {
  const int n = conv.n();
  const int d = conv.dim();
  std::vector<GradedPolynomial> grad;
  for (int b = 0; b < d; ++b) grad.push_back(algebra::differentiate(f, b));
  GradedPolynomial out(n);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const int w = conv.upper(a, b);
      if (w != 0) out += Scalar(w) * (algebra::lambda(n, a) * grad[b]);
    }
  for (int b = 0; b < d; ++b)
    for (int e = 0; e < d; ++e) {
      const int w = conv.upper(b, e);
      if (w == 0) continue;
      for (int a = 0; a < d; ++a) {
        const GradedPolynomial hess = algebra::differentiate(grad[e], a);
        if (hess.empty()) continue;
        for (int slot = 1; slot <= d; ++slot)
          out -= Scalar(w) * (algebra::pi(n, a, slot) * hess * algebra::xi(n, b, slot));
      }
    }
  return algebra::normal_order(out);
}

GradedPolynomial multiform_hamiltonian(const SymplecticConvention& conv, const Polynomial& h) {
  return multiform_hamiltonian(conv, h.to_graded(conv.n()));
}

GradedPolynomial lift_form_at(const FormField& p, std::span<const int> slots) {
  check_slots(p, slots);
  const int n = p.n();
  GradedPolynomial out(n);
  for (std::size_t f = 0; f < p.size(); ++f) {
    const Polynomial& coef = p.entry(f);
    if (coef.is_zero()) continue;
    const std::vector<int> idx = p.tuple(f);
    Word pis;
    for (int k = 0; k < p.degree(); ++k)
      pis.push_back(Letter::generator(Family::Pi, idx[k], slots[k]));
    out += coef.to_graded(n) * GradedPolynomial::monomial(n, pis);
  }
  return algebra::normal_order(out);
}

GradedPolynomial lift_form(const FormField& p) {
  GradedPolynomial out(p.n());
  for (const auto& slots : increasing_subsets(p.dim(), p.degree())) out += lift_form_at(p, slots);
  return out;
}

namespace {

struct ParsedWord {
  std::vector<int> slots;
  std::vector<int> indices;
  Polynomial::Exponents exponents;
};

ParsedWord parse_form_word(const Word& w, const Scalar& c, int n, int degree) {
  auto fail = [&](const std::string& why) {
    std::string text;
    for (std::size_t k = 0; k < w.size(); ++k) text += (k ? " " : "") + w[k].str();
    if (text.empty()) text = "1";
    throw StructuralError("word '" + text + "' is not part of a form operator: " + why);
  };
  if (!c.is_real()) fail("complex coefficient " + c.str());
  ParsedWord out;
  out.exponents.assign(2 * n, 0);
  for (const Letter& l : w) {
    if (l.is_classical()) fail("contains a classical symbol");
    switch (l.family()) {
      case Family::Phi:
        ++out.exponents[l.index()];
        break;
      case Family::Pi:
        if (l.copy() == 0) fail("pi without a slot label");
        out.slots.push_back(l.copy());
        out.indices.push_back(l.index());
        break;
      default:
        fail("contains " + l.str());
    }
  }
  if (static_cast<int>(out.slots.size()) != degree)
    fail("has " + std::to_string(out.slots.size()) + " pi factors, expected " + std::to_string(degree));
  if (!distinct(out.slots)) fail("two pi factors share a slot");
  return out;
}

FormField assemble(int n, int degree, const std::map<std::vector<int>, Polynomial>& comps) {
  FormField out(n, degree);
  std::map<std::vector<int>, Polynomial> full = comps;
  // Every tuple must be present with the antisymmetric value, which also
  // covers repeated indices (which must vanish).
  FormField probe(n, degree);
  for (std::size_t f = 0; f < probe.size(); ++f) {
    const std::vector<int> idx = probe.tuple(f);
    auto it = full.find(idx);
    const Polynomial value = it == full.end() ? Polynomial(2 * n) : it->second;
    if (!distinct(idx)) {
      if (!value.is_zero()) throw StructuralError("coefficient with a repeated index is nonzero");
      continue;
    }
    if (!std::is_sorted(idx.begin(), idx.end())) continue;
    out.set_component(idx, value);
  }
  for (std::size_t f = 0; f < out.size(); ++f) {
    auto it = full.find(out.tuple(f));
    const Polynomial value = it == full.end() ? Polynomial(2 * n) : it->second;
    if (!(value == out.entry(f))) throw StructuralError("coefficient tensor is not antisymmetric");
  }
  return out;
}

using Grouped = std::map<std::vector<int>, std::map<std::vector<int>, Polynomial>>;

Grouped group_by_placement(const GradedPolynomial& op, int degree) {
  const GradedPolynomial canon = algebra::normal_order(op);
  const int n = canon.n();
  Grouped groups;
  for (const auto& [w, c] : canon.terms()) {
    ParsedWord pw = parse_form_word(w, c, n, degree);
    auto& comps = groups[pw.slots];
    auto it = comps.try_emplace(pw.indices, Polynomial(2 * n)).first;
    it->second.add_term(pw.exponents, c.re());
  }
  return groups;
}

}  // namespace

FormField extract_form(const GradedPolynomial& op, int degree) {
  const int n = op.n();
  if (degree < 0 || degree > 2 * n) throw ConfigError("form degree must lie in [0, 2n]");
  const Grouped groups = group_by_placement(op, degree);
  const auto subsets = increasing_subsets(2 * n, degree);
  for (const auto& [slots, comps] : groups)
    if (!std::is_sorted(slots.begin(), slots.end()))
      throw StructuralError("pi factors appear out of slot order");
  static const std::map<std::vector<int>, Polynomial> kEmpty;
  auto comps_of = [&](const std::vector<int>& s) -> const std::map<std::vector<int>, Polynomial>& {
    auto it = groups.find(s);
    return it == groups.end() ? kEmpty : it->second;
  };
  const FormField reference = assemble(n, degree, comps_of(subsets.front()));
  for (std::size_t k = 1; k < subsets.size(); ++k) {
    if (!(assemble(n, degree, comps_of(subsets[k])) == reference)) {
      std::string s;
      for (int x : subsets[k]) s += std::to_string(x);
      throw StructuralError("placement (" + s + ") disagrees with the first-slots placement");
    }
  }
  return reference;
}

FormField extract_form_at(const GradedPolynomial& op, std::span<const int> slots) {
  const int n = op.n();
  const int degree = static_cast<int>(slots.size());
  const Grouped groups = group_by_placement(op, degree);
  const std::vector<int> want(slots.begin(), slots.end());
  for (const auto& [s, comps] : groups)
    if (s != want) throw StructuralError("operator has pi factors outside the requested slots");
  auto it = groups.find(want);
  if (it == groups.end()) return FormField(n, degree);
  return assemble(n, degree, it->second);
}

FormField lie_via_commutator(const SymplecticConvention& conv, const FormField& p,
                             const Polynomial& h) {
  const GradedPolynomial ham = multiform_hamiltonian(conv, h);
  const GradedPolynomial lifted = lift_form(p);
  return extract_form(Scalar::i() * algebra::commutator(ham, lifted), p.degree());
}

FormField lie_via_commutator_at(const SymplecticConvention& conv, const FormField& p,
                                const Polynomial& h, std::span<const int> slots) {
  const GradedPolynomial ham = multiform_hamiltonian(conv, h);
  const GradedPolynomial lifted = lift_form_at(p, slots);
  return extract_form_at(Scalar::i() * algebra::commutator(ham, lifted), slots);
}

Polynomial poisson_bracket(const SymplecticConvention& conv, const Polynomial& f,
                           const Polynomial& g) {
  Polynomial out(f.nvars());
  for (int b = 0; b < conv.dim(); ++b)
    for (int c = 0; c < conv.dim(); ++c) {
      const int w = conv.upper(b, c);
      if (w != 0) out += (f.derivative(b) * g.derivative(c)) * Rational(w);
    }
  return out;
}

bool bracket_representation_holds(const SymplecticConvention& conv, const Polynomial& h1,
                                  const Polynomial& h2, const FormField& p) {
  const Scalar i = Scalar::i();
  const GradedPolynomial a = i * multiform_hamiltonian(conv, h1);
  const GradedPolynomial b = i * multiform_hamiltonian(conv, h2);
  const GradedPolynomial c = -i * multiform_hamiltonian(conv, poisson_bracket(conv, h1, h2));
  const GradedPolynomial lifted = lift_form(p);
  return algebra::equals(algebra::commutator(algebra::commutator(a, b), lifted),
                         algebra::commutator(c, lifted));
}

void write_form_csv(std::ostream& os, const FormField& p) {
  std::set<Polynomial::Exponents> monomials;
  for (std::size_t f = 0; f < p.size(); ++f)
    for (const auto& [e, c] : p.entry(f).terms()) monomials.insert(e);
  os << "indices";
  for (const auto& e : monomials) os << "," << Polynomial::monomial_str(e);
  os << "\n";
  for (std::size_t f = 0; f < p.size(); ++f) {
    const std::vector<int> idx = p.tuple(f);
    std::string label;
    for (int a : idx) label += std::to_string(a + 1);
    os << (label.empty() ? "-" : label);
    for (const auto& e : monomials) {
      auto it = p.entry(f).terms().find(e);
      os << "," << (it == p.entry(f).terms().end() ? std::string("0") : it->second.get_str());
    }
    os << "\n";
  }
}

}  // namespace forge::forms
