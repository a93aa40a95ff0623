#include "tropo/polynomial.hpp"

#include <stdexcept>

namespace tropo {

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int i) {
  Polynomial p(nvars);
  Exponent e(nvars, 0);
  e[i] = 1;
  p.add_term(e, 1);
  return p;
}

Polynomial Polynomial::affine(const RatVector& a, const Rational& b) {
  const int n = static_cast<int>(a.size());
  Polynomial p = constant(n, b);
  for (int i = 0; i < n; ++i) {
    if (a(i) == 0) continue;
    Exponent e(n, 0);
    e[i] = 1;
    p.add_term(e, a(i));
  }
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree() == 0);
}

Rational Polynomial::constant_term() const { return coefficient(Exponent(nvars_, 0)); }

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("exponent arity mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::eval(const RatVector& x) const {
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) m *= x(i);
    s += m;
  }
  return s;
}

Polynomial Polynomial::derivative(int i) const {
  Polynomial d(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent f = e;
    f[i] -= 1;
    d.add_term(f, c * e[i]);
  }
  return d;
}

Polynomial Polynomial::gradient_dot(const RatVector& w) const {
  Polynomial d(nvars_);
  for (int i = 0; i < nvars_; ++i)
    if (w(i) != 0) d += derivative(i) * w(i);
  return d;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomial arity mismatch");
  Polynomial p(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponent e(a.nvars_);
      for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      p.add_term(e, ca * cb);
    }
  return p;
}

Polynomial Polynomial::pow(int k) const {
  Polynomial r = constant(nvars_, 1);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& subs) const {
  if (static_cast<int>(subs.size()) != nvars_) throw std::invalid_argument("substitution arity");
  const int m = subs.empty() ? 0 : subs[0].nvars();
  std::vector<std::vector<Polynomial>> powers(nvars_);
  Polynomial r(m);
  for (const auto& [e, c] : terms_) {
    Polynomial t = constant(m, c);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(m, 1));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * subs[i]);
      t = t * pw[e[i]];
    }
    r += t;
  }
  return r;
}

Polynomial Polynomial::compose(const RatVector& p, const RatMatrix& B) const {
  std::vector<Polynomial> subs;
  subs.reserve(nvars_);
  for (int i = 0; i < nvars_; ++i) subs.push_back(affine(B.row(i).transpose(), p(i)));
  if (nvars_ == 0) return constant(static_cast<int>(B.cols()), constant_term());
  return substitute(subs);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

bool operator<(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
  return a.terms_ < b.terms_;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) s += " + ";
    first = false;
    s += is_integer(c) ? numer(c).str() : to_string(c);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      s += "*x" + std::to_string(i + 1);
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
  }
  return s;
}

Polynomial contract_gradient(const Polynomial& f, const std::vector<Polynomial>& w) {
  Polynomial r(f.nvars());
  for (int i = 0; i < f.nvars(); ++i)
    if (!w[i].is_zero()) r += f.derivative(i) * w[i];
  return r;
}

}  // namespace tropo
