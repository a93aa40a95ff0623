#pragma once

#include "tropo/cycle.hpp"
#include "tropo/lattice.hpp"
#include "tropo/polyhedron.hpp"
#include "tropo/polynomial.hpp"

#include <optional>
#include <vector>

namespace tropo {

/// φ given by one polynomial per maximal cell of its complex of definition.
struct PiecewisePolynomial {
  int ambient_rank = 0;
  std::vector<Polyhedron> cells;
  std::vector<Polynomial> pieces;

  /// Index of some cell containing x.
  std::optional<std::size_t> locate(const RatVector& x) const;
  /// Throws NOT_IN_SUPPORT outside the domain.
  Rational operator()(const RatVector& x) const;
};

/// Throws CONTINUITY_VIOLATION when two pieces disagree on a shared face.
PiecewisePolynomial make_piecewise(int r, const std::vector<Polyhedron>& cells,
                                   const std::vector<Polynomial>& pieces);
PiecewisePolynomial global_function(const Polynomial& f);
/// Affine functions a_i . x + b_i.
struct AffineFunction {
  RatVector a;
  Rational b;
};
PiecewisePolynomial max_of(int r, const std::vector<AffineFunction>& fs);
PiecewisePolynomial min_of(int r, const std::vector<AffineFunction>& fs);

PiecewisePolynomial operator+(const PiecewisePolynomial& f, const PiecewisePolynomial& g);
PiecewisePolynomial operator-(const PiecewisePolynomial& f);
PiecewisePolynomial operator*(const Rational& c, const PiecewisePolynomial& f);

/// Every piece affine with integer linear part.
bool is_piecewise_linear(const PiecewisePolynomial& f);
bool is_continuous(const PiecewisePolynomial& f);

/// A codimension-0 cycle read as a function, and back.
TropicalCycle to_cycle(const PiecewisePolynomial& f);
PiecewisePolynomial from_cycle(const TropicalCycle& C);

/// Cells of C subdivided so that φ is polynomial on each; pieces[i] is φ on cells[i].
struct Refinement {
  TropicalCycle cycle;
  std::vector<Polynomial> phi;
};
/// Throws SUPPORT_MISMATCH if part of |C| lies outside the domain of φ.
Refinement refine_for(const PiecewisePolynomial& phi, const TropicalCycle& C);

TropicalCycle corner_locus(const PiecewisePolynomial& phi, const TropicalCycle& C);
/// Left fold of corner_locus; with check_proper, throws IMPROPER_INTERSECTION if a maximal
/// cell of an intermediate cycle lies inside the non-linearity locus of the next function.
TropicalCycle iterated_corner_locus(const std::vector<PiecewisePolynomial>& phis, const TropicalCycle& C,
                                    bool check_proper = false);

/// φ ∘ F on the preimage complex.
PiecewisePolynomial pullback_function(const IntegralAffineMap& F, const PiecewisePolynomial& phi);

}  // namespace tropo
