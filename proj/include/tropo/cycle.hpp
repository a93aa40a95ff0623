#pragma once

#include "tropo/complex.hpp"
#include "tropo/polyhedron.hpp"
#include "tropo/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tropo {

/// Weighted pure-dimensional complex C = (𝒞, m): maximal cells with polynomial weights in the
/// ambient coordinates. Weights are kept normalized modulo the affine hull of their cell.
struct TropicalCycle {
  int ambient_rank = 0;
  int dim = 0;
  std::vector<Polyhedron> cells;
  std::vector<Polynomial> weights;

  int codim() const { return ambient_rank - dim; }
  std::size_t size() const { return cells.size(); }
};

/// Throws NOT_PURE_DIMENSIONAL when the cells do not share one dimension.
TropicalCycle make_cycle(int r, const std::vector<Polyhedron>& cells, const std::vector<Polynomial>& weights);
TropicalCycle make_cycle(int r, const std::vector<Polyhedron>& cells, const std::vector<Rational>& weights);
TropicalCycle zero_cycle(int r, int dim);
/// N_R with weight 1.
TropicalCycle fundamental_cycle(int r);

PolyhedralComplex complex_of(const TropicalCycle& C);
/// Cells whose weight is not identically zero.
TropicalCycle prune(const TropicalCycle& C);
bool has_empty_support(const TropicalCycle& C);

struct BalancingReport {
  bool balanced = true;
  std::optional<Polyhedron> witness;  // codimension-one cell where balancing fails
  std::vector<Polynomial> residual;   // quotient coordinates of Σ m_σ ω_{σ,τ} restricted to τ
};
BalancingReport check_balancing(const TropicalCycle& C);

TropicalCycle scale(const TropicalCycle& C, const Rational& c);
/// Sum on the common refinement; zero-weight pieces are kept as cells.
TropicalCycle add(const TropicalCycle& C1, const TropicalCycle& C2);
/// Fan of local cones at omega with constant weights m_σ(omega).
TropicalCycle localize(const TropicalCycle& C, const RatVector& omega);
/// Total weight of a 0-dimensional cycle.
Rational degree(const TropicalCycle& C);
/// Equal supports and weights after refinement.
bool cycles_equal(const TropicalCycle& C1, const TropicalCycle& C2);

/// Subdivides every cell by the hyperplanes; weights are inherited.
TropicalCycle refine(const TropicalCycle& C, const std::vector<Hyperplane>& hs);
/// Merges cells of equal-dimensional cycles over a joint arrangement, summing weights.
TropicalCycle merge(const std::vector<TropicalCycle>& parts);

/// C1 × C2 in N1 × N2 with weight m1(x) m2(y).
TropicalCycle product(const TropicalCycle& C1, const TropicalCycle& C2);

std::string to_string(const TropicalCycle& C);

}  // namespace tropo
