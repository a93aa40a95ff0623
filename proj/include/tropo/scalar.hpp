#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>
#include <vector>

namespace tropo {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

/// "p/q" with q >= 1, always carrying the denominator.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
/// Accepts "p/q", "p" and optional sign; throws std::invalid_argument.
Rational parse_rational(const std::string& s);

Rational to_rational(const Integer& z);
Integer numer(const Rational& q);
Integer denom(const Rational& q);
bool is_integer(const Rational& q);
int sign(const Rational& q);
int sign(const Integer& z);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

RatVector to_rational(const IntVector& v);
RatMatrix to_rational(const IntMatrix& m);
/// Requires integral entries.
IntMatrix to_integer(const RatMatrix& m);
IntVector to_integer(const RatVector& v);

/// Scale to the primitive integer vector with the same direction (zero stays zero).
IntVector primitive(const RatVector& v);
/// Scale so that all entries are integers with gcd 1; returns the positive factor used.
Rational clear_denominators(const RatVector& v, IntVector& out);

/// Lexicographic comparison, -1/0/1.
int lex_compare(const RatVector& a, const RatVector& b);
int lex_compare(const IntVector& a, const IntVector& b);

std::string to_string(const RatVector& v);

}  // namespace tropo
