#pragma once

#include "tropo/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace tropo {

/// Multivariate polynomial with rational coefficients in a fixed number of variables.
class Polynomial {
 public:
  using Exponent = std::vector<int>;

  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int i);
  /// a . x + b
  static Polynomial affine(const RatVector& a, const Rational& b);

  int nvars() const { return nvars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  int degree() const;
  Rational coefficient(const Exponent& e) const;
  void add_term(const Exponent& e, const Rational& c);

  Rational eval(const RatVector& x) const;
  Polynomial derivative(int i) const;
  Polynomial gradient_dot(const RatVector& w) const;
  /// Substitutes x = p + B t; the result is a polynomial in t (B.cols() variables).
  Polynomial compose(const RatVector& p, const RatMatrix& B) const;
  /// Substitutes x_i = subs[i] (polynomials in a common set of variables).
  Polynomial substitute(const std::vector<Polynomial>& subs) const;
  Polynomial pow(int k) const;

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
  friend bool operator<(const Polynomial& a, const Polynomial& b);

  std::string str() const;

 private:
  int nvars_;
  std::map<Exponent, Rational> terms_;
};

/// Σ_i w_i ∂f/∂x_i for a vector of polynomial components w.
Polynomial contract_gradient(const Polynomial& f, const std::vector<Polynomial>& w);

}  // namespace tropo
