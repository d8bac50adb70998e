#include "forge/algebra.hpp"

#include "forge/errors.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace forge::algebra {

namespace {

constexpr std::uint64_t kByte = 0xFF;
constexpr std::uint64_t kNibble = 0xF;

int nibble_shift(int a) { return 44 - 4 * a; }

const char* family_glyph(Family f) {
  switch (f) {
    case Family::Phi: return "φ";
    case Family::Pi: return "π";
    case Family::Xi: return "ξ";
    case Family::Lambda: return "λ";
  }
  return "?";
}

bool upper_index(Family f) { return f == Family::Phi || f == Family::Pi; }

}  // namespace

// ---------------------------------------------------------------------------
// Letter

Letter Letter::generator(Family family, int index, int copy) {
  if (index < 0 || index > 0xFF) throw ConfigError("generator index out of range");
  if (copy < 0 || copy > 0xFF) throw ConfigError("copy label out of range");
  if (copy != 0 && (family == Family::Phi || family == Family::Lambda))
    throw ConfigError("only pi and xi carry copy labels");
  const auto cls = static_cast<std::uint64_t>(family);
  return Letter((cls << kClassShift) | (static_cast<std::uint64_t>(copy) << 8) |
                static_cast<std::uint64_t>(index));
}

Letter Letter::classical(SymbolKind kind, std::span<const int> derivatives) {
  std::uint64_t key = static_cast<std::uint64_t>(kind) << kKindShift;
  for (int a : derivatives) {
    if (a < 0 || a >= kMaxIndices) throw ConfigError("derivative index out of range");
    const std::uint64_t count = (key >> nibble_shift(a)) & kNibble;
    if (count == kNibble) throw ConfigError("derivative order too high");
    key += std::uint64_t{1} << nibble_shift(a);
  }
  return Letter(key);
}

Family Letter::family() const {
  if (is_classical()) throw ConfigError("classical symbol has no generator family");
  return static_cast<Family>(key_ >> kClassShift);
}

int Letter::index() const { return static_cast<int>(key_ & kByte); }
int Letter::copy() const { return static_cast<int>((key_ >> 8) & kByte); }

SymbolKind Letter::kind() const {
  return static_cast<SymbolKind>((key_ >> kKindShift) & kNibble);
}

int Letter::derivative_count(int a) const {
  return static_cast<int>((key_ >> nibble_shift(a)) & kNibble);
}

std::vector<int> Letter::derivatives() const {
  std::vector<int> out;
  for (int a = 0; a < kMaxIndices; ++a)
    for (int k = 0; k < derivative_count(a); ++k) out.push_back(a);
  return out;
}

int Letter::order() const {
  int total = 0;
  for (int a = 0; a < kMaxIndices; ++a) total += derivative_count(a);
  return total;
}

Letter Letter::differentiated(int a) const {
  if (!is_classical()) throw ConfigError("only classical symbols can be differentiated");
  if (a < 0 || a >= kMaxIndices) throw ConfigError("derivative index out of range");
  if (derivative_count(a) == static_cast<int>(kNibble)) throw ConfigError("derivative order too high");
  return Letter(key_ + (std::uint64_t{1} << nibble_shift(a)));
}

int Letter::max_index() const {
  if (!is_classical()) return index();
  int top = -1;
  for (int a = 0; a < kMaxIndices; ++a)
    if (derivative_count(a) > 0) top = a;
  return top;
}

std::string Letter::str() const {
  std::ostringstream os;
  if (is_classical()) {
    os << (kind() == SymbolKind::H1 ? "H1" : "H2");
    const auto d = derivatives();
    if (!d.empty()) {
      os << "_{";
      for (int a : d) os << (a + 1);
      os << "}";
    }
    return os.str();
  }
  const Family f = family();
  os << family_glyph(f) << (upper_index(f) ? "^" : "_") << (index() + 1);
  if (copy() != 0) os << "(" << copy() << ")";
  return os.str();
}

bool commutes(const Letter& x, const Letter& y) {
  const bool xc = x.is_classical();
  const bool yc = y.is_classical();
  if (xc && yc) return true;
  if (xc || yc) {
    const Letter& g = xc ? y : x;
    return g.family() != Family::Lambda;
  }
  const Family fx = x.family();
  const Family fy = y.family();
  if ((fx == Family::Lambda && fy == Family::Phi) || (fx == Family::Phi && fy == Family::Lambda))
    return x.index() != y.index();
  if ((fx == Family::Xi && fy == Family::Pi) || (fx == Family::Pi && fy == Family::Xi))
    return x.index() != y.index() || x.copy() != y.copy();
  return true;
}

// ---------------------------------------------------------------------------
// GradedPolynomial

GradedPolynomial::GradedPolynomial(int n) : n_(n) {
  if (n < 1) throw ConfigError("polynomial dimension must be >= 1");
}

GradedPolynomial GradedPolynomial::constant(int n, const Scalar& c) {
  GradedPolynomial p(n);
  p.add_term({}, c);
  return p;
}

GradedPolynomial GradedPolynomial::monomial(int n, Word w, const Scalar& c) {
  GradedPolynomial p(n);
  p.add_term(w, c);
  return p;
}

void GradedPolynomial::check_word(const Word& w) const {
  for (const Letter& l : w) {
    if (l.max_index() >= dim()) throw ConfigError("letter " + l.str() + " exceeds dimension 2n");
    if (!l.is_classical() && l.copy() > dim())
      throw ConfigError("copy label of " + l.str() + " exceeds 2n");
  }
}

void GradedPolynomial::check_compatible(const GradedPolynomial& o) const {
  if (o.n_ != n_) throw ConfigError("polynomials built for different dimensions");
}

void GradedPolynomial::add_term(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) {
    check_word(w);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

GradedPolynomial& GradedPolynomial::operator+=(const GradedPolynomial& o) {
  check_compatible(o);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

GradedPolynomial& GradedPolynomial::operator-=(const GradedPolynomial& o) {
  check_compatible(o);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

GradedPolynomial& GradedPolynomial::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coef] : terms_) coef *= c;
  return *this;
}

GradedPolynomial phi(int n, int a) {
  return GradedPolynomial::monomial(n, {Letter::generator(Family::Phi, a)});
}
GradedPolynomial pi(int n, int a, int copy) {
  return GradedPolynomial::monomial(n, {Letter::generator(Family::Pi, a, copy)});
}
GradedPolynomial xi(int n, int a, int copy) {
  return GradedPolynomial::monomial(n, {Letter::generator(Family::Xi, a, copy)});
}
GradedPolynomial lambda(int n, int a) {
  return GradedPolynomial::monomial(n, {Letter::generator(Family::Lambda, a)});
}
GradedPolynomial symbol(int n, SymbolKind kind, std::span<const int> derivatives) {
  return GradedPolynomial::monomial(n, {Letter::classical(kind, derivatives)});
}
GradedPolynomial symbol(int n, SymbolKind kind, std::initializer_list<int> derivatives) {
  return symbol(n, kind, std::span<const int>(derivatives.begin(), derivatives.size()));
}

GradedPolynomial multiply(const GradedPolynomial& p, const GradedPolynomial& q) {
  if (p.n() != q.n()) throw ConfigError("cannot multiply polynomials built for different dimensions");
  GradedPolynomial out(p.n());
  Word w;
  for (const auto& [u, cu] : p.terms()) {
    for (const auto& [v, cv] : q.terms()) {
      w.assign(u.begin(), u.end());
      w.insert(w.end(), v.begin(), v.end());
      out.add_term(w, cu * cv);
    }
  }
  return out;
}

GradedPolynomial normal_order(const GradedPolynomial& p) {
  GradedPolynomial out(p.n());
  std::vector<std::pair<Word, Scalar>> pending(p.terms().begin(), p.terms().end());
  const Scalar plus_i = Scalar::i();
  const Scalar minus_i = -Scalar::i();

  // Insertion sort on each word; every non-commuting swap spawns the
  // contraction term [left, right] as a new pending word.
  while (!pending.empty()) {
    auto [w, c] = std::move(pending.back());
    pending.pop_back();
    for (std::size_t i = 1; i < w.size(); ++i) {
      for (std::size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
        const Letter left = w[j - 1];
        const Letter right = w[j];
        if (!commutes(left, right)) {
          Word contracted;
          contracted.reserve(w.size() - 1);
          contracted.insert(contracted.end(), w.begin(), w.begin() + static_cast<long>(j - 1));
          Scalar k;
          if (right.is_classical()) {
            // left = lambda_a: [lambda_a, H_S] = -i H_{S+a}
            contracted.push_back(right.differentiated(left.index()));
            k = minus_i;
          } else if (left.family() == Family::Lambda) {
            // [lambda_a, phi^a] = -i
            k = minus_i;
          } else {
            // [xi_a, pi^a] = i
            k = plus_i;
          }
          contracted.insert(contracted.end(), w.begin() + static_cast<long>(j + 1), w.end());
          pending.emplace_back(std::move(contracted), c * k);
        }
        std::swap(w[j - 1], w[j]);
      }
    }
    out.add_term(w, c);
  }
  return out;
}

GradedPolynomial commutator(const GradedPolynomial& p, const GradedPolynomial& q) {
  if (p.n() != q.n()) throw ConfigError("commutator of polynomials built for different dimensions");
  GradedPolynomial raw(p.n());
  Word uv;
  Word vu;
  for (const auto& [u, cu] : p.terms()) {
    for (const auto& [v, cv] : q.terms()) {
      // Words whose letters pairwise commute have vanishing bracket.
      bool all_commute = true;
      for (const Letter& x : u) {
        for (const Letter& y : v) {
          if (!commutes(x, y)) {
            all_commute = false;
            break;
          }
        }
        if (!all_commute) break;
      }
      if (all_commute) continue;
      const Scalar c = cu * cv;
      uv.assign(u.begin(), u.end());
      uv.insert(uv.end(), v.begin(), v.end());
      vu.assign(v.begin(), v.end());
      vu.insert(vu.end(), u.begin(), u.end());
      raw.add_term(uv, c);
      raw.add_term(vu, -c);
    }
  }
  return normal_order(raw);
}

GradedPolynomial dagger(const GradedPolynomial& p) {
  GradedPolynomial out(p.n());
  for (const auto& [w, c] : p.terms()) {
    Word r(w.rbegin(), w.rend());
    out.add_term(r, c.conj());
  }
  return normal_order(out);
}

bool equals(const GradedPolynomial& p, const GradedPolynomial& q) {
  return normal_order(p - q).empty();
}

bool is_classical_function(const GradedPolynomial& p) {
  for (const auto& [w, c] : p.terms())
    for (const Letter& l : w)
      if (!l.is_classical() && l.family() != Family::Phi) return false;
  return true;
}

GradedPolynomial differentiate(const GradedPolynomial& f, int a) {
  if (a < 0 || a >= f.dim()) throw ConfigError("derivative index out of range");
  if (!is_classical_function(f))
    throw PreconditionError("differentiate needs a function of phi and classical symbols only");
  GradedPolynomial out(f.n());
  for (const auto& [w, c] : f.terms()) {
    for (std::size_t k = 0; k < w.size(); ++k) {
      const Letter& l = w[k];
      Word d = w;
      if (l.is_classical()) {
        d[k] = l.differentiated(a);
      } else if (l.index() == a) {
        d.erase(d.begin() + static_cast<long>(k));
      } else {
        continue;
      }
      out.add_term(d, c);
    }
  }
  return normal_order(out);
}

GradedPolynomial drop_family(const GradedPolynomial& p, SymbolKind kind) {
  GradedPolynomial out(p.n());
  for (const auto& [w, c] : p.terms()) {
    const bool hit = std::any_of(w.begin(), w.end(), [kind](const Letter& l) {
      return l.is_classical() && l.kind() == kind;
    });
    if (!hit) out.add_term(w, c);
  }
  return out;
}

GradedPolynomial random_graded(std::mt19937_64& rng, int n, int terms, int max_length) {
  const int d = 2 * n;
  std::uniform_int_distribution<int> len(0, max_length);
  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_int_distribution<int> idx(0, d - 1);
  std::uniform_int_distribution<int> nder(0, 2);
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 2);
  GradedPolynomial out(n);
  for (int t = 0; t < terms; ++t) {
    Word w;
    const int l = len(rng);
    for (int k = 0; k < l; ++k) {
      const int c = kind(rng);
      if (c == 0) {
        std::vector<int> ds(static_cast<std::size_t>(nder(rng)));
        for (int& a : ds) a = idx(rng);
        w.push_back(Letter::classical(SymbolKind::H1, ds));
      } else {
        w.push_back(Letter::generator(static_cast<Family>(c), idx(rng)));
      }
    }
    const int re = num(rng);
    const int im = num(rng);
    const int de = den(rng);
    out.add_term(w, Scalar(Rational(re, de), Rational(im, de)));
  }
  return out;
}

std::string to_string(const GradedPolynomial& p) {
  const GradedPolynomial canon = normal_order(p);
  if (canon.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : canon.terms()) {
    std::string coef = c.str();
    const bool negative = !coef.empty() && coef[0] == '-';
    if (!first) os << (negative ? " - " : " + ");
    else if (negative) os << "-";
    if (negative) coef.erase(0, 1);
    first = false;
    const bool unit = coef == "1";
    if (w.empty()) {
      os << coef;
      continue;
    }
    if (!unit) os << coef << " ";
    for (std::size_t k = 0; k < w.size(); ++k) os << (k ? " " : "") << w[k].str();
  }
  return os.str();
}

}  // namespace forge::algebra
