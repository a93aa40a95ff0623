#pragma once

#include "tropo/complex.hpp"
#include "tropo/cycle.hpp"
#include "tropo/lattice.hpp"

#include <cstdint>
#include <vector>

namespace tropo {

/// One verified fact about a sum of linear spans L_a + L_b: either it is all of N_R, or v avoids it.
struct TransversalityFact {
  Sublattice span;  // saturated lattice of L_a + L_b
  bool transverse;
};

struct GenericVector {
  RatVector v;
  std::uint64_t seed = 0;
  int attempts = 0;
  std::vector<TransversalityFact> certificate;
};

/// Seeded search for v outside every proper sum L_a + L_b (a from family_a, b from family_b).
/// Throws SEARCH_EXHAUSTED after `budget` candidates.
GenericVector find_generic_vector(int r, const std::vector<Sublattice>& family_a,
                                  const std::vector<Sublattice>& family_b, std::uint64_t seed,
                                  int budget = 200);
/// Generic for pairs of faces of one complex.
GenericVector find_generic_vector(const PolyhedralComplex& C, std::uint64_t seed);

/// Linear spans of all faces of the cells, deduplicated.
std::vector<Sublattice> face_spans(const std::vector<Polyhedron>& cells);

TropicalCycle stable_intersection(const TropicalCycle& C1, const TropicalCycle& C2, std::uint64_t seed);
/// Fan displacement rule for a given displacement vector (assumed generic).
TropicalCycle stable_intersection_with(const TropicalCycle& C1, const TropicalCycle& C2, const RatVector& v);

TropicalCycle pushforward(const IntegralAffineMap& F, const TropicalCycle& C);
TropicalCycle pullback(const IntegralAffineMap& F, const TropicalCycle& C, std::uint64_t seed);
/// F^*C computed as (p1)_*(p2^*C · Γ_F).
TropicalCycle pullback_via_graph(const IntegralAffineMap& F, const TropicalCycle& C, std::uint64_t seed);

/// Γ_F ⊆ N'_R × N_R with weight 1.
TropicalCycle graph_cycle(const IntegralAffineMap& F);

}  // namespace tropo
