#include "tropo/scalar.hpp"

#include <stdexcept>

namespace tropo {

std::string to_string(const Integer& z) { return z.str(); }

std::string to_string(const Rational& q) {
  return numer(q).str() + "/" + denom(q).str();
}

Rational parse_rational(const std::string& s) {
  auto valid_int = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw std::invalid_argument("malformed rational \"" + s + "\"");
  if (num[0] == '+') num = num.substr(1);
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in \"" + s + "\"");
  return Rational(Integer(num), d);
}

Rational to_rational(const Integer& z) { return Rational(z); }
Integer numer(const Rational& q) { return boost::multiprecision::numerator(q); }
Integer denom(const Rational& q) { return boost::multiprecision::denominator(q); }
bool is_integer(const Rational& q) { return denom(q) == 1; }
int sign(const Rational& q) { return q.sign(); }
int sign(const Integer& z) { return z.sign(); }

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }
Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

RatVector to_rational(const IntVector& v) {
  RatVector r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = Rational(v(i));
  return r;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j))) throw std::logic_error("to_integer: non-integral entry");
      r(i, j) = numer(m(i, j));
    }
  return r;
}

IntVector to_integer(const RatVector& v) {
  IntVector r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!is_integer(v(i))) throw std::logic_error("to_integer: non-integral entry");
    r(i) = numer(v(i));
  }
  return r;
}

Rational clear_denominators(const RatVector& v, IntVector& out) {
  Integer l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) l = lcm(l, denom(v(i)));
  out.resize(v.size());
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out(i) = numer(v(i)) * (l / denom(v(i)));
    g = gcd(g, out(i));
  }
  if (g == 0) return Rational(1);
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) /= g;
  return Rational(l, g);
}

IntVector primitive(const RatVector& v) {
  IntVector out;
  clear_denominators(v, out);
  return out;
}

int lex_compare(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return -1;
    if (b(i) < a(i)) return 1;
  }
  return 0;
}

int lex_compare(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return -1;
    if (b(i) < a(i)) return 1;
  }
  return 0;
}

std::string to_string(const RatVector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += is_integer(v(i)) ? numer(v(i)).str() : to_string(v(i));
  }
  return s + ")";
}

}  // namespace tropo
