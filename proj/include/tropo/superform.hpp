#pragma once

#include "tropo/cycle.hpp"
#include "tropo/divisors.hpp"
#include "tropo/lattice.hpp"
#include "tropo/polyhedron.hpp"
#include "tropo/polynomial.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tropo {

/// Lagerberg superform Σ f_{I,J} d′x_I ∧ d″x_J with polynomial coefficients. I and J are
/// bitmasks over the coordinates; each term is written with all d′ factors first, indices
/// increasing. Zero coefficients are never stored.
struct Superform {
  using Key = std::pair<std::uint32_t, std::uint32_t>;

  int ambient_rank = 0;
  std::map<Key, Polynomial> terms;

  static Superform zero(int r);
  static Superform function(const Polynomial& f);
  static Superform constant(int r, const Rational& c);
  /// d′x_i (0-based index).
  static Superform dprime(int r, int i);
  /// d″x_j.
  static Superform ddprime(int r, int j);
  /// f d′x_I ∧ d″x_J for index lists given in any order (sign absorbed).
  static Superform monomial(const Polynomial& f, const std::vector<int>& I, const std::vector<int>& J);
  /// d′x_1∧d″x_1∧…∧d′x_r∧d″x_r, which integrates to the lattice volume.
  static Superform volume(int r);

  bool is_zero() const { return terms.empty(); }
  /// (p, q) when all terms share it; nullopt for the zero form or mixed bidegree.
  std::optional<std::pair<int, int>> bidegree() const;
  /// Keeps the (p, q) component only.
  Superform component(int p, int q) const;
  Polynomial coefficient(const std::vector<int>& I, const std::vector<int>& J) const;

  Superform& operator+=(const Superform& o);
  Superform& operator-=(const Superform& o);
  Superform& operator*=(const Polynomial& f);
  friend Superform operator+(Superform a, const Superform& b) { return a += b; }
  friend Superform operator-(Superform a, const Superform& b) { return a -= b; }
  friend Superform operator-(Superform a) { return a *= Polynomial::constant(a.ambient_rank, Rational(-1)); }
  friend Superform operator*(const Polynomial& f, Superform a) { return a *= f; }
  friend Superform operator*(const Rational& c, Superform a) {
    return a *= Polynomial::constant(a.ambient_rank, c);
  }
  friend bool operator==(const Superform& a, const Superform& b) {
    return a.ambient_rank == b.ambient_rank && a.terms == b.terms;
  }

  std::string str() const;
};

Superform wedge(const Superform& a, const Superform& b);
Superform d_prime(const Superform& a);
Superform d_double_prime(const Superform& a);
/// J(f d′x_I ∧ d″x_J) = (−1)^{|I||J|} f d′x_J ∧ d″x_I.
Superform J(const Superform& a);
/// Invariance of a sum of (p,p) forms under (−1)^p J, resp. (−1)^{p+1} J.
bool is_symmetric(const Superform& a);
bool is_antisymmetric(const Superform& a);
/// F^*α for F : R^n -> R^r.
Superform pullback(const IntegralAffineMap& F, const Superform& a);

/// Superform with coefficients polynomial on each cell of a complex of definition. Outside
/// the union of the cells the form is zero.
struct PiecewiseSuperform {
  int ambient_rank = 0;
  std::vector<Polyhedron> cells;
  std::vector<Superform> forms;

  static PiecewiseSuperform global(const Superform& a);
  std::optional<std::size_t> locate(const RatVector& x) const;
};

/// Throws CONTINUITY_VIOLATION when two pieces disagree on a shared face.
PiecewiseSuperform make_piecewise_form(int r, const std::vector<Polyhedron>& cells,
                                       const std::vector<Superform>& forms);
/// True when coefficients and their first partial derivatives agree across shared faces.
bool is_c1(const PiecewiseSuperform& a);

PiecewiseSuperform operator+(const PiecewiseSuperform& a, const PiecewiseSuperform& b);
PiecewiseSuperform operator-(const PiecewiseSuperform& a);
PiecewiseSuperform operator-(const PiecewiseSuperform& a, const PiecewiseSuperform& b);
PiecewiseSuperform wedge(const PiecewiseSuperform& a, const PiecewiseSuperform& b);
/// Polyhedral derivatives d′_P, d″_P: the derivative taken piece by piece.
PiecewiseSuperform d_prime(const PiecewiseSuperform& a);
PiecewiseSuperform d_double_prime(const PiecewiseSuperform& a);
PiecewiseSuperform J(const PiecewiseSuperform& a);
PiecewiseSuperform pullback(const IntegralAffineMap& F, const PiecewiseSuperform& a);
/// The function φ as a piecewise (0,0) form.
PiecewiseSuperform as_form(const PiecewisePolynomial& phi);

/// Lattice basis of N_Δ with orientation; ∫_Δ of the (k,k) volume form is the
/// lattice-normalized volume of Δ.
struct Calibration {
  Polyhedron cell;
  IntMatrix basis;
  int sign = 1;
};
Calibration calibration(const Polyhedron& cell);

/// ∫ f dλ over a bounded polyhedron, λ the Lebesgue measure normalized by lattice_of(P).
Rational lattice_integral(const Polynomial& f, const Polyhedron& P);
/// Simplices (as vertex lists) triangulating a bounded polyhedron.
std::vector<std::vector<RatVector>> triangulate(const Polyhedron& P);

/// ∫_P α for a k-dimensional polyhedron P. Only the (k,k) part of α contributes.
/// Throws UNBOUNDED_INTEGRAND if the integrand is nonzero on unbounded P.
Rational integrate(const Superform& a, const Polyhedron& P);
/// Σ_σ ∫_σ m_σ α over the maximal cells of C.
Rational integrate(const Superform& a, const TropicalCycle& C);
Rational integrate(const PiecewiseSuperform& a, const TropicalCycle& C);

/// Σ over cells σ and facets τ of the boundary contributions of a (k−1,k) or (k,k−1) form,
/// with normals ω_{τ,σ} = −ω_{σ,τ}. Other bidegrees contribute 0.
Rational boundary_integrate(const Superform& b, const Polyhedron& P);
Rational boundary_integrate(const PiecewiseSuperform& b, const TropicalCycle& C);

/// ∫_C d′_P β − ∫_∂C β for β of type (k−1,k), or the d″ version for type (k,k−1).
Rational stokes_residual(const PiecewiseSuperform& b, const TropicalCycle& C);
/// ∫(β1∧d′d″β2 − β2∧d′d″β1) − ∫_∂(β1∧d″β2 − β2∧d″β1).
Rational green_residual(const PiecewiseSuperform& b1, const PiecewiseSuperform& b2,
                        const TropicalCycle& C);

/// ⟨d′δ_C, η⟩ = −⟨δ_C, d′η⟩ against Σ_σ ∫_σ d′m_σ ∧ η.
struct PairingReport {
  Rational lhs;
  Rational rhs;
};
PairingReport smooth_weight_boundary_pairing(const TropicalCycle& C, const PiecewiseSuperform& eta);

/// Σ_i α_i ∧ δ_{C_i}; the α_i have bidegree (p − n_i, q − n_i) with n_i = codim C_i.
struct DeltaPreform {
  struct Term {
    PiecewiseSuperform form;
    TropicalCycle carrier;
  };
  int ambient_rank = 0;
  std::vector<Term> terms;

  /// (p, q) of the preform; nullopt when empty or ill-typed.
  std::optional<std::pair<int, int>> bidegree() const;
};

DeltaPreform delta_preform(const PiecewiseSuperform& a, const TropicalCycle& C);
/// Throws WRONG_BIDEGREE when the terms do not share one bidegree.
void check_grading(const DeltaPreform& A);
DeltaPreform wedge_preforms(const DeltaPreform& A, const DeltaPreform& B, std::uint64_t seed);
DeltaPreform pullback_preform(const IntegralAffineMap& F, const DeltaPreform& A, std::uint64_t seed);
/// Σ_i ∫_{C_i} α_i.
Rational integrate(const DeltaPreform& A);

struct PoincareLelongReport {
  /// ∫ φ d′d″β − ∫ d′_P d″_P φ ∧ β − ∫ δ_{φ·C} ∧ β
  Rational residual;
  /// ∫_∂ d′_P φ ∧ β − ∫ δ_{φ·C} ∧ β
  Rational boundary_dprime;
  /// ∫_∂ d″_P φ ∧ β + ∫ δ_{φ·C} ∧ β
  Rational boundary_ddprime;
  Rational phi_ddc_beta;
  Rational ddc_phi_beta;
  Rational delta_term;
};
/// β is a δ-preform of type (k−1,k−1) on the k-dimensional cycle C. Throws
/// HYPOTHESIS_VIOLATED when some α_i is not C¹ or not compactly supported on its carrier.
PoincareLelongReport poincare_lelong(const PiecewisePolynomial& phi, const DeltaPreform& beta,
                                     const TropicalCycle& C, std::uint64_t seed);
Rational poincare_lelong_residual(const PiecewisePolynomial& phi, const DeltaPreform& beta,
                                  const TropicalCycle& C, std::uint64_t seed);

/// C¹ bump Π_i b(x_i) with b(t) = (1 − ((t − c_i)/h_i)²)² on |t − c_i| ≤ h_i, zero outside,
/// on the grid complex of the box.
PiecewisePolynomial bump(const RatVector& center, const RatVector& half_widths);

}  // namespace tropo
