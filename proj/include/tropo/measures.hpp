#pragma once

#include "tropo/cycle.hpp"
#include "tropo/divisors.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tropo {

/// Finite sum of point masses; points distinct and sorted lexicographically, masses nonzero.
struct PointMeasure {
  std::vector<std::pair<RatVector, Rational>> atoms;
};

/// Reads a 0-dimensional cycle as a measure.
PointMeasure to_measure(const TropicalCycle& Z);
Rational total_mass(const PointMeasure& mu);
/// Σ w·f(p).
Rational integrate(const PointMeasure& mu, const PiecewisePolynomial& f);
std::string to_string(const PointMeasure& mu);

/// Throws INVALID_INPUT unless φ is piecewise linear with integral slopes.
void require_metric_function(const PiecewisePolynomial& phi);

/// φ_1 ⋯ φ_n · C for n = dim C. Self-intersections are allowed.
/// Throws WRONG_DIMENSION when the count of functions is not dim C.
PointMeasure monge_ampere(const std::vector<PiecewisePolynomial>& phis, const TropicalCycle& C);

/// λ(C; φ_0..φ_t) for t = dim C via the induction formula, peeling the last function:
///   λ(C; φ_0..φ_t) = λ(φ_t·C; φ_0..φ_{t−1}) + ∫ φ_t d MA(φ_0..φ_{t−1}; C),
/// and λ(Z; φ_0) = ∫ φ_0 dZ on a 0-cycle. Throws IMPROPER_INTERSECTION unless any k of the
/// non-linearity loci of the φ_i meet |C| in dimension at most dim C − k.
Rational local_height(const std::vector<PiecewisePolynomial>& phis, const TropicalCycle& C);
/// Same recursion, peeling phis[order[0]] first, then phis[order[1]], ...
Rational local_height(const std::vector<PiecewisePolynomial>& phis, const TropicalCycle& C,
                      const std::vector<std::size_t>& order);

/// ∫ ρ d MA(rest; C). Equals the change of local_height when φ_0 is replaced by φ_0 + ρ for
/// every ρ whose corner locus on C vanishes.
Rational metric_change_delta(const PiecewisePolynomial& rho, const std::vector<PiecewisePolynomial>& rest,
                             const TropicalCycle& C);

}  // namespace tropo
