#pragma once

#include "tropo/scalar.hpp"

#include <optional>
#include <vector>

namespace tropo {

/// A sublattice of Z^ambient_rank; basis vectors are the columns.
struct Sublattice {
  int ambient_rank = 0;
  IntMatrix basis;

  int rank() const { return static_cast<int>(basis.cols()); }
  static Sublattice full(int r);
};

struct HermiteForm {
  IntMatrix H;  // row Hermite form, zero rows last
  IntMatrix U;  // unimodular, H = U * A
};

struct SmithForm {
  IntMatrix S;  // diagonal, d_1 | d_2 | ...
  IntMatrix U;
  IntMatrix V;  // S = U * A * V
};

HermiteForm hermite_normal_form(const IntMatrix& A);
SmithForm smith_normal_form(const IntMatrix& A);
/// Nonzero diagonal entries of the Smith form.
std::vector<Integer> elementary_divisors(const IntMatrix& A);

/// Basis of ker(A) in Z^cols, which is automatically saturated.
Sublattice saturated_kernel(const IntMatrix& A);

/// HNF basis of the lattice generated by the columns of gens.
Sublattice lattice_span(int ambient_rank, const IntMatrix& gens);
/// (span_Q gens) ∩ Z^r.
Sublattice saturation(int ambient_rank, const IntMatrix& gens);
/// L ∩ Z^r for the rational subspace L spanned by the columns of directions.
Sublattice saturation(const RatMatrix& directions);

Sublattice sum(const Sublattice& a, const Sublattice& b);
Sublattice intersect(const Sublattice& a, const Sublattice& b);
/// F(P) for F : Z^n -> Z^m.
Sublattice image(const IntMatrix& F, const Sublattice& P);
/// F^{-1}(Q) ⊆ Z^n.
Sublattice preimage(const IntMatrix& F, const Sublattice& Q);
bool contains(const Sublattice& lattice, const IntVector& v);

/// Group index; std::nullopt encodes INFINITE.
using LatticeIndex = std::optional<Integer>;

/// [Z^r : span(gens_a) + span(gens_b)].
LatticeIndex lattice_index(int ambient_rank, const IntMatrix& gens_a, const IntMatrix& gens_b);
/// [super : sub] for sub ⊆ super.
LatticeIndex index_in(const Sublattice& super, const Sublattice& sub);

/// Generator of N_sigma / N_tau pointing along `inward` (a direction in L_sigma \ L_tau),
/// reduced against the HNF basis of N_tau to the least L1 norm (ties lexicographic).
IntVector primitive_normal(const Sublattice& n_sigma, const Sublattice& n_tau,
                           const RatVector& inward);

struct IntegralAffineMap {
  IntMatrix linear;       // m x n
  RatVector translation;  // m

  int source_rank() const { return static_cast<int>(linear.cols()); }
  int target_rank() const { return static_cast<int>(linear.rows()); }
  RatVector apply(const RatVector& x) const;
  /// (*this) ∘ inner
  IntegralAffineMap compose(const IntegralAffineMap& inner) const;
  static IntegralAffineMap identity(int r);
};

struct ProjectionIdentity {
  Integer lhs;
  Integer rhs;
};

/// Both sides of the lattice projection formula for F : Z^n -> Z^m, P ⊆ Z^n, Q ⊆ Z^m.
/// Throws PRECONDITION_VIOLATED unless rk F(Z^n) = m = rk(F(P) + Q).
ProjectionIdentity lattice_projection_identity(const IntMatrix& F, const Sublattice& P,
                                               const Sublattice& Q);

}  // namespace tropo
