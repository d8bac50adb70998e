#include "forge/polynomial.hpp"

#include "forge/errors.hpp"

#include <numeric>
#include <sstream>

namespace forge {

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
  if (nvars < 1) throw ConfigError("polynomial needs at least one variable");
}

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw ConfigError("variable index out of range");
  Polynomial p(nvars);
  Exponents e(nvars, 0);
  e[i] = 1;
  p.add_term(e, Rational(1));
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars_) throw ConfigError("exponent vector has wrong length");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw ConfigError("polynomials over different variable sets");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw ConfigError("polynomials over different variable sets");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coef] : terms_) coef *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw ConfigError("polynomials over different variable sets");
  Polynomial out(a.nvars_);
  Polynomial::Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial Polynomial::derivative(int i) const {
  if (i < 0 || i >= nvars_) throw ConfigError("variable index out of range");
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents d = e;
    --d[i];
    out.add_term(d, c * e[i]);
  }
  return out;
}

double Polynomial::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != nvars_) throw ConfigError("evaluation point has wrong length");
  double total = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c.get_d();
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) m *= x[i];
    total += m;
  }
  return total;
}

std::string Polynomial::monomial_str(const Exponents& e) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!first) os << "*";
    first = false;
    os << "x" << (i + 1);
    if (e[i] > 1) os << "^" << e[i];
  }
  return first ? "1" : os.str();
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.get_str() << ")*" << monomial_str(e);
  }
  return os.str();
}

algebra::GradedPolynomial Polynomial::to_graded(int n) const {
  if (nvars_ != 2 * n) throw ConfigError("polynomial variable count must equal 2n");
  algebra::GradedPolynomial out(n);
  for (const auto& [e, c] : terms_) {
    algebra::Word w;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) w.push_back(algebra::Letter::generator(algebra::Family::Phi, i));
    out.add_term(w, Scalar(c));
  }
  return out;
}

Polynomial random_polynomial(std::mt19937_64& rng, int nvars, int max_degree, int terms) {
  Polynomial p(nvars);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> var(0, nvars - 1);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  for (int t = 0; t < terms; ++t) {
    Polynomial::Exponents e(nvars, 0);
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) ++e[var(rng)];
    const int nu = num(rng);
    const int de = den(rng);
    Rational c(nu, de);
    c.canonicalize();
    p.add_term(e, c);
  }
  return p;
}

}  // namespace forge
