#include <doctest.h>

#include "support.hpp"
#include "tropo/error.hpp"
#include "tropo/linalg.hpp"
#include "tropo/polyhedron.hpp"
#include "tropo/polynomial.hpp"

#include <functional>
#include <random>

using namespace tropo;
using namespace testing;

namespace {

Polyhedron interval(const Rational& lo, const Rational& hi) { return box({{lo, hi}}); }

// vertices by solving every r-subset of constraints as equalities
std::vector<RatVector> brute_vertices(int r, const std::vector<Constraint>& cs) {
  std::vector<RatVector> out;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(pick.size()) == r) {
      RatMatrix M(r, r);
      RatVector rhs(r);
      for (int i = 0; i < r; ++i) {
        M.row(i) = cs[pick[i]].a.transpose();
        rhs(i) = cs[pick[i]].b;
      }
      if (rank(M) < r) return;
      const RatVector x = *solve(M, rhs);
      for (const auto& c : cs)
        if (c.a.dot(x) < c.b) return;
      for (const auto& v : out)
        if (v == x) return;
      out.push_back(x);
      return;
    }
    for (int i = start; i < static_cast<int>(cs.size()); ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<Constraint> random_polytope(std::mt19937_64& rng, int r, int extra) {
  std::uniform_int_distribution<int> d(-3, 3), off(-6, 0);
  std::vector<Constraint> cs;
  for (int i = 0; i < r; ++i) {
    RatVector e = RatVector::Zero(r);
    e(i) = 1;
    cs.push_back({e, -5});
    cs.push_back({RatVector(-e), -5});
  }
  for (int k = 0; k < extra; ++k) {
    RatVector a(r);
    for (int i = 0; i < r; ++i) a(i) = d(rng);
    cs.push_back({a, off(rng)});
  }
  return cs;
}

}  // namespace

TEST_CASE("lp_optimize status and value") {
  const auto unit = interval(0, 1);
  auto res = lp_optimize(rvec({1}), unit, Sense::Max);
  CHECK(res.status == LpStatus::Optimal);
  CHECK(res.value == 1);
  CHECK(res.witness == rvec({1}));

  const auto ray = make_polyhedron(1, {ge({1}, 0)});
  CHECK(lp_optimize(rvec({1}), ray, Sense::Max).status == LpStatus::Unbounded);
  CHECK(lp_optimize(rvec({1}), ray, Sense::Min).value == 0);

  Polyhedron bad;
  bad.ambient_rank = 1;
  bad.inequalities = {ge({1}, 1), ge({-1}, 0)};
  CHECK(lp_optimize(rvec({1}), bad, Sense::Max).status == LpStatus::Infeasible);
}

TEST_CASE("lp agrees with vertex enumeration on random polytopes") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> d(-4, 4);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int r = 2 + trial % 2;
    const auto cs = random_polytope(rng, r, 3);
    const auto verts = brute_vertices(r, cs);
    if (verts.empty() || verts.size() > 12) continue;
    Polyhedron P;
    P.ambient_rank = r;
    P.inequalities = cs;
    for (int k = 0; k < 3; ++k) {
      RatVector c(r);
      for (int i = 0; i < r; ++i) c(i) = d(rng);
      Rational best = c.dot(verts[0]);
      for (const auto& v : verts) best = std::max<Rational>(best, c.dot(v));
      const auto res = lp_optimize(c, P, Sense::Max);
      REQUIRE(res.status == LpStatus::Optimal);
      CHECK(res.value == best);
      CHECK(c.dot(res.witness) == best);
      ++checked;
    }
    // the canonical vertex set agrees too
    CHECK(vertices(P).size() == verts.size());
  }
  CHECK(checked > 20);
}

TEST_CASE("dimension") {
  CHECK(dimension(box({{0, 1}, {0, 1}})) == 2);
  CHECK(dimension(box({{0, 1}, {0, 0}})) == 1);
  Polyhedron bad;
  bad.ambient_rank = 1;
  bad.inequalities = {ge({1}, 1), ge({-1}, 0)};
  CHECK(dimension(bad) == -1);
  CHECK(is_empty(bad));
  // implicit equality hidden in a pair of inequalities plus a redundant one
  const auto seg = make_polyhedron(2, {ge({1, 1}, 1), ge({-1, -1}, -1), ge({1, 0}, 0), ge({0, 1}, 0),
                                       ge({2, 0}, -3)});
  CHECK(seg.dim == 1);
  CHECK(seg.equalities.size() == 1);
  CHECK(seg.inequalities.size() == 2);
  CHECK(in_relative_interior(seg, seg.relint));
}

TEST_CASE("canonical form is a set invariant") {
  const auto a = make_polyhedron(2, {ge({2, 0}, 0), ge({0, 3}, 0), ge({-1, -1}, -1)});
  const auto b = make_polyhedron(2, {ge({-1, -1}, -1), ge({1, 0}, 0), ge({0, 1}, 0), ge({1, 1}, -7)});
  CHECK(a == b);
  const auto c = make_polyhedron(2, {ge({1, 0}, 0), ge({0, 1}, 0), ge({-1, -1}, -2)});
  CHECK_FALSE(a == c);
  CHECK(is_subset(a, c));
  CHECK_FALSE(is_subset(c, a));
}

TEST_CASE("faces") {
  const auto sq = box({{0, 1}, {0, 1}});
  CHECK(faces(sq, 1).size() == 4);
  CHECK(faces(sq, 2).size() == 4);
  for (const auto& e : faces(sq, 1)) {
    CHECK(e.dim == 1);
    CHECK(is_face(e, sq));
  }

  const auto ray = make_polyhedron(2, {ge({1, 0}, 0)}, {{rvec({0, 1}), 0}});
  const auto rf = faces(ray, 1);
  REQUIRE(rf.size() == 1);
  CHECK(rf[0] == Polyhedron::point(rvec({0, 0})));

  const auto simplex = make_polyhedron(2, {ge({1, 0}, 0), ge({0, 1}, 0), ge({-1, -1}, -1)});
  const auto vs = faces(simplex, 2);
  CHECK(vs.size() == 3);
  const auto bv = brute_vertices(2, simplex.inequalities);
  CHECK(bv.size() == 3);
  for (const auto& v : bv) CHECK(std::count(vs.begin(), vs.end(), Polyhedron::point(v)) == 1);
}

TEST_CASE("faces of faces are faces") {
  const auto cube = box({{0, 1}, {0, 2}, {-1, 1}});
  const auto c1 = faces(cube, 1);
  CHECK(c1.size() == 6);
  const auto c2 = faces(cube, 2);
  CHECK(c2.size() == 12);
  CHECK(faces(cube, 3).size() == 8);
  for (const auto& f : c1)
    for (const auto& g : faces(f, 1)) {
      CHECK(is_face(g, cube));
      CHECK(std::count(c2.begin(), c2.end(), g) == 1);
    }
  CHECK_FALSE(is_face(box({{0, 1}, {0, 1}, {0, 0}}), cube));
}

TEST_CASE("local cones") {
  const auto unit = interval(0, 1);
  CHECK(local_cone(unit, rvec({q(1, 2)})) == Polyhedron::whole_space(1));
  CHECK(local_cone(unit, rvec({0})) == make_polyhedron(1, {ge({1}, 0)}));
  CHECK_THROWS_AS(local_cone(unit, rvec({2})), Error);

  const auto cone = make_polyhedron(2, {ge({0, 1}, 0), ge({1, -1}, 0)});
  CHECK(local_cone(cone, rvec({1, 0})) == make_polyhedron(2, {ge({0, 1}, 0)}));
  CHECK(local_cone(cone, rvec({0, 0})) == cone);

  // at a relative interior point the local cone is the linear span
  const auto seg = make_polyhedron(2, {ge({1, 0}, 0), ge({-1, 0}, -1)}, {{rvec({1, -1}), 0}});
  CHECK(local_cone(seg, seg.relint) == make_polyhedron(2, {}, {{rvec({1, -1}), 0}}));
}

TEST_CASE("displaced_meets") {
  const auto plane = Polyhedron::whole_space(2);
  CHECK(displaced_meets(plane, plane, rvec({3, -1})));
  const auto xray = make_polyhedron(2, {ge({1, 0}, 0)}, {{rvec({0, 1}), 0}});
  const auto yray = make_polyhedron(2, {ge({0, 1}, 0)}, {{rvec({1, 0}), 0}});
  CHECK_FALSE(displaced_meets(xray, yray, rvec({1, 2})));
  const auto right = make_polyhedron(2, {ge({1, 0}, 0)});
  const auto left = make_polyhedron(2, {ge({-1, 0}, 0)});
  // left + eps v = {x <= eps v_1}
  CHECK(displaced_meets(right, left, rvec({1, 0})));
  CHECK_FALSE(displaced_meets(right, left, rvec({-1, 0})));
  CHECK(displaced_meets(left, right, rvec({-1, 0})));
  // transverse lines always meet
  const auto xline = make_polyhedron(2, {}, {{rvec({0, 1}), 0}});
  const auto yline = make_polyhedron(2, {}, {{rvec({1, 0}), 0}});
  CHECK(displaced_meets(xline, yline, rvec({5, 7})));
}

TEST_CASE("lattices and normals of cells") {
  const auto diag = make_polyhedron(2, {}, {{rvec({1, -1}), 0}});
  const auto L = lattice_of(diag);
  CHECK(L.rank() == 1);
  CHECK(index_in(L, lattice_span(2, imat({{1}, {1}}))) == Integer(1));
  CHECK(index_in(L, lattice_span(2, imat({{2}, {2}}))) == Integer(2));

  const auto quad = make_polyhedron(2, {ge({1, 0}, 0), ge({0, 1}, 0)});
  const auto xray = make_polyhedron(2, {ge({1, 0}, 0)}, {{rvec({0, 1}), 0}});
  CHECK(primitive_normal(quad, xray) == ivec({0, 1}));
  CHECK_THROWS_AS(primitive_normal(quad, Polyhedron::point(rvec({0, 0}))), Error);
}

TEST_CASE("affine images and preimages") {
  const auto sq = box({{0, 1}, {0, 1}});
  IntegralAffineMap F{imat({{1, 1}, {1, -1}, {0, 2}}), rvec({1, 0, 0})};
  const auto img = affine_image(F, sq);
  CHECK(img.dim == 2);
  for (const auto& v : brute_vertices(2, sq.inequalities)) CHECK(contains(img, F.apply(v)));
  CHECK(vertices(img).size() == 4);
  CHECK(affine_preimage(F, img) == sq);

  IntegralAffineMap proj{imat({{1, 0}}), rvec({0})};
  CHECK_THROWS(affine_image(proj, sq));
  CHECK(affine_preimage(proj, interval(0, 1)) == make_polyhedron(2, {ge({1, 0}, 0), ge({-1, 0}, -1)}));
}

TEST_CASE("restriction of polynomials to the affine hull") {
  const auto line = make_polyhedron(2, {}, {{rvec({1, -1}), 1}});
  const auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  const auto f = restrict_to_hull(x - y, line);
  CHECK(f.is_constant());
  CHECK(f.constant_term() == 1);
  CHECK(restrict_to_hull(x * y, line) == restrict_to_hull((y + Polynomial::constant(2, 1)) * y, line));
}
