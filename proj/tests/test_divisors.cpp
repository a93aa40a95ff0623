#include <doctest.h>

#include "oracles.hpp"
#include "support.hpp"
#include "tropo/divisors.hpp"
#include "tropo/error.hpp"
#include "tropo/intersection.hpp"

#include <random>

using namespace tropo;
using namespace testing;

namespace {

const RatVector origin2 = RatVector::Zero(2);

AffineFunction aff(std::initializer_list<Rational> a, const Rational& b) { return {rvec(a), b}; }

PiecewisePolynomial random_pl(std::mt19937_64& rng, int r, int terms) {
  std::uniform_int_distribution<int> d(-2, 2), c(-6, 6);
  std::vector<AffineFunction> fs;
  for (int k = 0; k < terms; ++k) {
    RatVector a(r);
    for (int i = 0; i < r; ++i) a(i) = d(rng);
    fs.push_back({a, Rational(c(rng), 2)});
  }
  return max_of(r, fs);
}

// max over all exponents of d·Δ with random coefficients
PiecewisePolynomial plane_curve_function(std::mt19937_64& rng, int d, std::vector<oracle::P2>& newton) {
  std::uniform_int_distribution<int> c(-20, 20);
  std::vector<AffineFunction> fs;
  newton.clear();
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) {
      fs.push_back(aff({i, j}, Rational(c(rng), 3)));
      newton.push_back({Rational(i), Rational(j)});
    }
  return max_of(2, fs);
}

}  // namespace

TEST_CASE("corner loci of basic functions") {
  const auto R1 = fundamental_cycle(1);
  const auto relu = max_of(1, {aff({0}, 0), aff({1}, 0)});
  CHECK(cycles_equal(corner_locus(relu, R1), point_cycle(rvec({0}))));
  CHECK(has_empty_support(corner_locus(global_function(Polynomial::affine(rvec({3, -1}), 2)), fundamental_cycle(2))));

  const auto R2 = fundamental_cycle(2);
  const auto mx = max_of(2, {aff({0, 0}, 0), aff({1, 0}, 0), aff({0, 1}, 0)});
  const auto mn = min_of(2, {aff({0, 0}, 0), aff({1, 0}, 0), aff({0, 1}, 0)});
  const auto max_line = make_cycle(
      2, {ray(origin2, ivec({-1, 0})), ray(origin2, ivec({0, -1})), ray(origin2, ivec({1, 1}))},
      std::vector<Rational>{1, 1, 1});
  CHECK(cycles_equal(corner_locus(mx, R2), max_line));
  // concave functions have negative corner weights
  CHECK(cycles_equal(corner_locus(mn, R2), tropical_line(origin2, -1)));
  CHECK(cycles_equal(corner_locus(mn, R2), scale(corner_locus(-mn, R2), -1)));
}

TEST_CASE("corner loci on curves") {
  const auto L = tropical_line(origin2);
  const auto mn = min_of(2, {aff({0, 0}, 0), aff({1, 0}, 0), aff({0, 1}, 0)});
  CHECK(cycles_equal(iterated_corner_locus({mn, mn}, fundamental_cycle(2)), point_cycle(origin2)));
  const auto mx_shift = max_of(2, {aff({0, 0}, 0), aff({1, 0}, -2), aff({0, 1}, -1)});
  // Newton polytopes Δ and -Δ have mixed volume 2
  CHECK(degree(corner_locus(mx_shift, L)) == 2);
  const auto mn_shift = min_of(2, {aff({0, 0}, 0), aff({1, 0}, -2), aff({0, 1}, -1)});
  CHECK(cycles_equal(corner_locus(mn_shift, L), point_cycle(rvec({1, 0}), -1)));
  const auto a = min_of(2, {aff({0, 0}, 0), aff({1, 0}, 0)});
  const auto b = min_of(2, {aff({0, 0}, 0), aff({0, 1}, 0)});
  CHECK(cycles_equal(iterated_corner_locus({a, b}, fundamental_cycle(2)), point_cycle(origin2)));
  const auto flat = global_function(Polynomial::affine(rvec({1, 1}), 0));
  CHECK(has_empty_support(iterated_corner_locus({flat, mn}, fundamental_cycle(2))));
  CHECK_THROWS_AS(iterated_corner_locus({a, a}, fundamental_cycle(2), true), Error);
  CHECK_NOTHROW(iterated_corner_locus({a, b}, fundamental_cycle(2), true));
}

TEST_CASE("polynomial pieces and weights") {
  // φ = x^2 on x >= 0 and 0 on x <= 0 is C^1: no corner
  const auto x = Polynomial::variable(1, 0);
  const auto sq = make_piecewise(1, {make_polyhedron(1, {ge({1}, 0)}), make_polyhedron(1, {ge({-1}, 0)})},
                                 {x * x, Polynomial(1)});
  CHECK(has_empty_support(corner_locus(sq, fundamental_cycle(1))));
  // weight x+1 on the right of 0 and 1 on the left, φ = max(0,x): the weight at 0 is 1
  const auto C = make_cycle(1, {make_polyhedron(1, {ge({-1}, 0)}), make_polyhedron(1, {ge({1}, 0)})},
                            std::vector<Polynomial>{Polynomial::constant(1, 1), x + Polynomial::constant(1, 1)});
  const auto relu = max_of(1, {aff({0}, 0), aff({1}, 0)});
  CHECK(cycles_equal(corner_locus(relu, C), point_cycle(rvec({0}))));
  // φ = max(0, x) with weights x+1 and x+1 on the right of 3, a kink at 3 with ω_τ = 0
  const auto kink3 = max_of(1, {aff({0}, 0), aff({1}, -3)});
  CHECK(cycles_equal(corner_locus(kink3, C), point_cycle(rvec({3}), 4)));
}

TEST_CASE("errors") {
  const auto x = Polynomial::variable(1, 0);
  CHECK_THROWS_AS(make_piecewise(1, {make_polyhedron(1, {ge({1}, 0)}), make_polyhedron(1, {ge({-1}, 0)})},
                                 {x + Polynomial::constant(1, 1), Polynomial(1)}),
                  Error);
  const auto half = make_piecewise(1, {make_polyhedron(1, {ge({1}, 0)})}, {x});
  CHECK_THROWS_AS(corner_locus(half, fundamental_cycle(1)), Error);
}

TEST_CASE("functions as codimension-0 cycles") {
  std::mt19937_64 rng(3);
  const auto f = random_pl(rng, 2, 4);
  const auto C = to_cycle(f);
  CHECK(check_balancing(C).balanced);
  const auto g = from_cycle(C);
  for (int k = 0; k < 10; ++k) {
    const RatVector p = rvec({Rational(k - 5, 3), Rational(7 - k, 2)});
    CHECK(g(p) == f(p));
  }
  CHECK(is_piecewise_linear(f));
  CHECK_FALSE(is_piecewise_linear(global_function(Polynomial::variable(1, 0).pow(2))));
}

TEST_CASE("pullback of functions") {
  const auto mn = min_of(2, {aff({0, 0}, 0), aff({1, 0}, 0), aff({0, 1}, 0)});
  const auto id = pullback_function(IntegralAffineMap::identity(2), mn);
  CHECK(cycles_equal(to_cycle(id), to_cycle(mn)));
  const auto diag = pullback_function(IntegralAffineMap{imat({{1}, {1}}), rvec({0, 0})}, mn);
  const auto expect = min_of(1, {aff({0}, 0), aff({1}, 0)});
  CHECK(cycles_equal(to_cycle(diag), to_cycle(expect)));
  const auto cst = pullback_function(IntegralAffineMap{IntMatrix::Zero(2, 1), rvec({2, -1})}, mn);
  CHECK(cycles_equal(to_cycle(cst), scale(fundamental_cycle(1), -1)));
}

TEST_CASE("corner loci are balanced and satisfy the algebraic laws") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 4; ++trial) {
    const auto phi = random_pl(rng, 2, 3), psi = random_pl(rng, 2, 3);
    const auto C = fundamental_cycle(2);
    const auto pc = corner_locus(phi, C);
    CHECK(check_balancing(pc).balanced);
    CHECK(cycles_equal(corner_locus(psi, pc), corner_locus(phi, corner_locus(psi, C))));
    CHECK(cycles_equal(corner_locus(phi + psi, C), add(pc, corner_locus(psi, C))));
    const auto L = tropical_line(rvec({Rational(trial), Rational(1 - trial)}));
    CHECK(cycles_equal(corner_locus(phi, stable_intersection(C, L, 1)),
                       stable_intersection(pc, L, 2)));
  }
}

TEST_CASE("pullback and projection formula for corner loci") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 3; ++trial) {
    const auto phi = random_pl(rng, 2, 3);
    const IntegralAffineMap F{imat({{1, trial}, {-1, 1}}), rvec({Rational(trial), 0})};
    const auto C = tropical_line(rvec({1, -1}));
    CHECK(cycles_equal(corner_locus(pullback_function(F, phi), pullback(F, C, 0)),
                       pullback(F, corner_locus(phi, C), 1)));
    const auto Cp = add(tropical_line(rvec({0, 1})), random_balanced_fan(rng, 3));
    CHECK(cycles_equal(pushforward(F, corner_locus(pullback_function(F, phi), Cp)),
                       corner_locus(phi, pushforward(F, Cp))));
  }
}

TEST_CASE("tropical Bezout against the mixed volume") {
  std::mt19937_64 rng(2);
  for (int d = 1; d <= 3; ++d)
    for (int e = d; e <= 3; ++e) {
      std::vector<oracle::P2> na, nb;
      const auto f = plane_curve_function(rng, d, na);
      const auto g = plane_curve_function(rng, e, nb);
      const auto Cf = corner_locus(f, fundamental_cycle(2));
      const auto Cg = corner_locus(g, fundamental_cycle(2));
      CHECK(check_balancing(Cf).balanced);
      const Rational mv = oracle::mixed_volume2(na, nb);
      CHECK(mv == d * e);
      CHECK(degree(stable_intersection(Cf, Cg, 0)) == mv);
    }
}
