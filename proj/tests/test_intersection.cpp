#include <doctest.h>

#include "support.hpp"
#include "tropo/error.hpp"
#include "tropo/intersection.hpp"
#include "tropo/linalg.hpp"

#include <random>

using namespace tropo;
using namespace testing;

namespace {

const RatVector origin2 = RatVector::Zero(2);

RatVector random_point(std::mt19937_64& rng, int r) {
  std::uniform_int_distribution<int> d(-3, 3);
  RatVector v(r);
  for (int i = 0; i < r; ++i) v(i) = d(rng);
  return v;
}

IntMatrix random_map(std::mt19937_64& rng, int m, int n) {
  for (;;) {
    IntMatrix A = random_imat(rng, m, n, 2);
    if (rank(A) == std::min(m, n)) return A;
  }
}

}  // namespace

TEST_CASE("generic vectors") {
  const auto fan = complex_of(tropical_line(origin2));
  const auto g = find_generic_vector(fan, 0);
  CHECK_FALSE(g.v.isZero());
  CHECK_FALSE(g.certificate.empty());
  CHECK(find_generic_vector(fan, 0).v == g.v);
  // independent check: every face pair that still meets after displacement is transverse
  for (const auto& s : fan.cells)
    for (const auto& t : fan.cells)
      if (s.dim + t.dim >= 2 && displaced_meets(s, t, g.v))
        CHECK(lattice_index(2, lattice_of(s).basis, lattice_of(t).basis).has_value());

  const auto whole = make_complex(3, {Polyhedron::whole_space(3)});
  const auto gw = find_generic_vector(whole, 9);
  CHECK_FALSE(gw.v.isZero());
  for (const auto& f : gw.certificate) CHECK(f.transverse);

  // a single candidate against the x-axis and y-axis can be exhausted deterministically
  const std::vector<Sublattice> axes{lattice_span(2, imat({{1}, {0}})), lattice_span(2, imat({{0}, {1}}))};
  const std::vector<Sublattice> pt{Sublattice{2, IntMatrix(2, 0)}};
  CHECK_THROWS_AS(find_generic_vector(2, axes, pt, 0, 0), Error);
}

TEST_CASE("stable intersection of plane tropical lines") {
  const auto L = tropical_line(origin2), M = tropical_line(rvec({3, 1}));
  const auto P = stable_intersection(L, M, 1);
  CHECK(cycles_equal(P, point_cycle(rvec({2, 0}))));
  const auto self = stable_intersection(L, L, 4);
  CHECK(cycles_equal(self, point_cycle(origin2)));
  CHECK(cycles_equal(stable_intersection(L, fundamental_cycle(2), 0), L));
  CHECK(cycles_equal(stable_intersection(fundamental_cycle(2), L, 0), L));
}

TEST_CASE("stable intersection with weights and lattice indices") {
  // fan rays (1,0), (0,1), (-1,-2) weights 1,2,1 meets the line at (1,1) in degree 2
  const auto C = make_cycle(
      2, {ray(origin2, ivec({1, 0})), ray(origin2, ivec({0, 1})), ray(origin2, ivec({-1, -2}))},
      std::vector<Rational>{1, 2, 1});
  const auto P = stable_intersection(C, tropical_line(rvec({1, 1})), 3);
  CHECK(degree(P) == 2);
  // a line of slope 2 hits the x-axis with index 2
  const auto steep = make_cycle(2, {make_polyhedron(2, {}, {{rvec({2, -1}), 0}})}, std::vector<Rational>{1});
  const auto xaxis = make_cycle(2, {make_polyhedron(2, {}, {{rvec({0, 1}), 0}})}, std::vector<Rational>{1});
  CHECK(cycles_equal(stable_intersection(steep, xaxis, 0), point_cycle(origin2, 2)));
  const auto skew = make_cycle(2, {make_polyhedron(2, {}, {{rvec({1, 2}), 0}})}, std::vector<Rational>{1});
  CHECK(cycles_equal(stable_intersection(skew, xaxis, 0), point_cycle(origin2, 1)));
}

TEST_CASE("seed independence and commutativity") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    const auto A = add(random_balanced_fan(rng, 3), tropical_line(random_point(rng, 2)));
    const auto B = tropical_line(random_point(rng, 2), 2);
    const auto ref = stable_intersection(A, B, 0);
    CHECK(check_balancing(ref).balanced);
    for (std::uint64_t seed : {1u, 2u, 77u}) CHECK(cycles_equal(stable_intersection(A, B, seed), ref));
    CHECK(cycles_equal(stable_intersection(B, A, 5), ref));
  }
}

TEST_CASE("tropical planes in R^3") {
  const auto H1 = tropical_plane(RatVector::Zero(3));
  const auto H2 = tropical_plane(rvec({1, 2, -1}));
  const auto H3 = tropical_plane(rvec({-2, 1, 3}));
  CHECK(check_balancing(H1).balanced);
  const auto curve = stable_intersection(H1, H2, 0);
  CHECK(curve.dim == 1);
  CHECK(check_balancing(curve).balanced);
  const auto left = stable_intersection(curve, H3, 1);
  const auto right = stable_intersection(H1, stable_intersection(H2, H3, 2), 3);
  CHECK(degree(left) == 1);
  CHECK(cycles_equal(left, right));
  CHECK(degree(stable_intersection(stable_intersection(H1, H1, 0), H1, 1)) == 1);
}

TEST_CASE("pushforward") {
  const auto L = tropical_line(origin2);
  CHECK(cycles_equal(pushforward(IntegralAffineMap::identity(2), L), L));
  const IntegralAffineMap proj{imat({{1, 0}}), rvec({0})};
  CHECK(cycles_equal(pushforward(proj, L), fundamental_cycle(1)));
  const IntegralAffineMap crush{imat({{0, 0}}), rvec({1})};
  CHECK(has_empty_support(pushforward(crush, L)));
  // index of the image lattice: x -> 2x doubles the weight
  const IntegralAffineMap dbl{imat({{2}}), rvec({0})};
  CHECK(cycles_equal(pushforward(dbl, point_cycle(rvec({1}))), point_cycle(rvec({2}))));
  CHECK(cycles_equal(pushforward(dbl, fundamental_cycle(1)), scale(fundamental_cycle(1), 2)));
}

TEST_CASE("pushforward of polynomial weights") {
  const auto x = Polynomial::variable(1, 0);
  const auto C = make_cycle(1, {Polyhedron::whole_space(1)}, std::vector<Polynomial>{x * x});
  const IntegralAffineMap F{imat({{1}, {1}}), rvec({0, 3})};
  const auto img = pushforward(F, C);
  REQUIRE(img.size() == 1);
  // at y = (t, t+3) the weight is t^2
  CHECK(img.weights[0].eval(rvec({2, 5})) == 4);
  CHECK(check_balancing(img).balanced);
}

TEST_CASE("pullback") {
  const auto L = tropical_line(origin2);
  CHECK(cycles_equal(pullback(IntegralAffineMap::identity(2), L, 0), L));
  const IntegralAffineMap diag{imat({{1}, {1}}), rvec({0, 0})};
  const auto vert = make_cycle(2, {make_polyhedron(2, {}, {{rvec({1, 0}), 3}})}, std::vector<Rational>{1});
  CHECK(cycles_equal(pullback(diag, vert, 0), point_cycle(rvec({3}))));
  const IntegralAffineMap proj{imat({{1, 0}}), rvec({0})};
  const auto line = make_cycle(2, {make_polyhedron(2, {}, {{rvec({1, 0}), 0}})}, std::vector<Rational>{1});
  CHECK(cycles_equal(pullback(proj, point_cycle(rvec({0})), 0), line));
  // the x-axis meets the tropical line stably at the vertex
  const IntegralAffineMap axis{imat({{1}, {0}}), rvec({0, 0})};
  CHECK(cycles_equal(pullback(axis, L, 0), point_cycle(rvec({0}))));
}

TEST_CASE("pullback agrees with the graph formula") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const auto C = add(tropical_line(random_point(rng, 2)), random_balanced_fan(rng, 3));
    const IntegralAffineMap F{random_map(rng, 2, 2), random_point(rng, 2)};
    const auto direct = pullback(F, C, trial);
    CHECK(check_balancing(direct).balanced);
    CHECK(cycles_equal(direct, pullback_via_graph(F, C, trial + 100)));
    CHECK(cycles_equal(direct, pullback(F, C, trial + 7)));
  }
  const IntegralAffineMap G{imat({{1}, {2}}), rvec({q(1, 2), 0})};
  const auto L = tropical_line(origin2);
  CHECK(cycles_equal(pullback(G, L, 0), pullback_via_graph(G, L, 1)));
}

TEST_CASE("projection formula and multiplicativity") {
  std::mt19937_64 rng(12);
  const IntegralAffineMap F{random_map(rng, 2, 2), random_point(rng, 2)};
  const auto C = tropical_line(random_point(rng, 2));
  const auto D = tropical_line(random_point(rng, 2), 3);
  CHECK(cycles_equal(pullback(F, stable_intersection(C, D, 0), 1),
                     stable_intersection(pullback(F, C, 2), pullback(F, D, 3), 4)));
  const auto Cp = tropical_line(random_point(rng, 2));
  CHECK(cycles_equal(pushforward(F, stable_intersection(pullback(F, C, 5), Cp, 6)),
                     stable_intersection(C, pushforward(F, Cp), 7)));
}
