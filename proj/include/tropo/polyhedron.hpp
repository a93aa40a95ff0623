#pragma once

#include "tropo/lattice.hpp"
#include "tropo/lp.hpp"
#include "tropo/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tropo {

/// a . x >= b as an inequality, a . x = b as an equality.
struct Constraint {
  RatVector a;
  Rational b;
};

/// Rational polyhedron in H-representation. Values produced by `canonical` carry the
/// canonical constraint system together with the dimension, a relative-interior point,
/// and a basis of the direction space.
struct Polyhedron {
  int ambient_rank = 0;
  std::vector<Constraint> inequalities;
  std::vector<Constraint> equalities;

  bool is_canonical = false;
  int dim = -1;            // -1: empty (valid only when canonical)
  RatVector relint;        // canonical, nonempty
  RatMatrix directions;    // ambient_rank x dim

  static Polyhedron whole_space(int r);
  static Polyhedron point(const RatVector& p);
};

Polyhedron canonical(const Polyhedron& P);
/// Canonical form of {x : A x >= b, E x = f} built from rows.
Polyhedron make_polyhedron(int r, const std::vector<Constraint>& ineqs,
                           const std::vector<Constraint>& eqs = {});

bool is_empty(const Polyhedron& P);
/// Dimension of the affine hull; -1 encodes EMPTY.
int dimension(const Polyhedron& P);
LpResult lp_optimize(const RatVector& objective, const Polyhedron& P, Sense sense);

bool contains(const Polyhedron& P, const RatVector& x);
/// Is x in the relative interior of P?
bool in_relative_interior(const Polyhedron& P, const RatVector& x);
Polyhedron intersect(const Polyhedron& P, const Polyhedron& Q);
bool is_subset(const Polyhedron& P, const Polyhedron& Q);
bool is_face(const Polyhedron& F, const Polyhedron& P);
bool is_bounded(const Polyhedron& P);

std::vector<Polyhedron> facets(const Polyhedron& P);
std::vector<Polyhedron> faces(const Polyhedron& P, int codim);
std::vector<RatVector> vertices(const Polyhedron& P);

/// LC_omega(P), a cone at the origin; throws NOT_MEMBER when omega is not in P.
Polyhedron local_cone(const Polyhedron& P, const RatVector& omega);

/// Does P meet Q + eps v for all sufficiently small eps > 0?
bool displaced_meets(const Polyhedron& P, const Polyhedron& Q, const RatVector& v);

/// N_P = L_P ∩ Z^r.
Sublattice lattice_of(const Polyhedron& P);
/// omega_{sigma,tau} for a facet tau of sigma.
IntVector primitive_normal(const Polyhedron& sigma, const Polyhedron& tau);

/// Image F(P) for an affine map that is injective on P.
Polyhedron affine_image(const IntegralAffineMap& F, const Polyhedron& P);
/// F^{-1}(P).
Polyhedron affine_preimage(const IntegralAffineMap& F, const Polyhedron& P);

/// Total order on canonical polyhedra; equality means equal sets.
int compare(const Polyhedron& P, const Polyhedron& Q);
inline bool operator==(const Polyhedron& P, const Polyhedron& Q) { return compare(P, Q) == 0; }
inline bool operator<(const Polyhedron& P, const Polyhedron& Q) { return compare(P, Q) < 0; }

/// Rewrites a polynomial on aff(P) so it only involves the non-pivot coordinates of the
/// canonical equation system (a normal form for functions on the affine hull).
class Polynomial;
Polynomial restrict_to_hull(const Polynomial& f, const Polyhedron& P);

std::string to_string(const Polyhedron& P);

}  // namespace tropo
