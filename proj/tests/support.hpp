#pragma once

#include "tropo/cycle.hpp"
#include "tropo/polyhedron.hpp"
#include "tropo/scalar.hpp"

#include <initializer_list>
#include <random>
#include <vector>

namespace testing {

using namespace tropo;

inline IntMatrix imat(std::initializer_list<std::initializer_list<long>> rows) {
  const Eigen::Index m = rows.size();
  const Eigen::Index n = m ? rows.begin()->size() : 0;
  IntMatrix a(m, n);
  Eigen::Index i = 0;
  for (auto& r : rows) {
    Eigen::Index j = 0;
    for (long x : r) a(i, j++) = x;
    ++i;
  }
  return a;
}

inline IntVector ivec(std::initializer_list<long> xs) {
  IntVector v(xs.size());
  Eigen::Index i = 0;
  for (long x : xs) v(i++) = x;
  return v;
}

inline RatVector rvec(std::initializer_list<Rational> xs) {
  RatVector v(xs.size());
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

inline Rational q(long p, long d = 1) { return Rational(p, d); }

inline IntMatrix random_imat(std::mt19937_64& rng, int m, int n, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix a(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = d(rng);
  return a;
}

inline Constraint ge(std::initializer_list<Rational> a, const Rational& b) { return {rvec(a), b}; }

// axis-aligned box [lo_i, hi_i]
inline Polyhedron box(const std::vector<std::pair<Rational, Rational>>& sides) {
  const int r = static_cast<int>(sides.size());
  std::vector<Constraint> in;
  for (int i = 0; i < r; ++i) {
    RatVector e = RatVector::Zero(r);
    e(i) = 1;
    in.push_back({e, sides[i].first});
    in.push_back({RatVector(-e), -sides[i].second});
  }
  return make_polyhedron(r, in);
}

// base + cone(columns of gens), the generators assumed independent
inline Polyhedron cone_at(const RatVector& base, const IntMatrix& gens) {
  const int k = static_cast<int>(gens.cols());
  std::vector<Constraint> in;
  for (int i = 0; i < k; ++i) {
    RatVector e = RatVector::Zero(k);
    e(i) = 1;
    in.push_back({e, 0});
  }
  return affine_image(IntegralAffineMap{gens, base}, make_polyhedron(k, in));
}

inline Polyhedron ray(const RatVector& base, const IntVector& dir) {
  return cone_at(base, IntMatrix(dir));
}

inline Polyhedron segment(const RatVector& p, const RatVector& q) {
  IntVector d;
  const Rational len = 1 / clear_denominators(RatVector(q - p), d);
  return affine_image(IntegralAffineMap{IntMatrix(d), p},
                      make_polyhedron(1, {ge({1}, 0), ge({-1}, -len)}));
}

inline TropicalCycle tropical_line(const RatVector& c, const Rational& w = 1) {
  return make_cycle(2, {ray(c, ivec({1, 0})), ray(c, ivec({0, 1})), ray(c, ivec({-1, -1}))},
                    std::vector<Rational>{w, w, w});
}

// 2-dimensional tropical plane in R^3 centered at c
inline TropicalCycle tropical_plane(const RatVector& c, const Rational& w = 1) {
  const IntVector g[4] = {ivec({1, 0, 0}), ivec({0, 1, 0}), ivec({0, 0, 1}), ivec({-1, -1, -1})};
  std::vector<Polyhedron> cells;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      IntMatrix m(3, 2);
      m.col(0) = g[i];
      m.col(1) = g[j];
      cells.push_back(cone_at(c, m));
    }
  return make_cycle(3, cells, std::vector<Rational>(6, w));
}

inline TropicalCycle point_cycle(const RatVector& p, const Rational& w = 1) {
  return make_cycle(static_cast<int>(p.size()), {Polyhedron::point(p)}, std::vector<Rational>{w});
}

// balanced 1-dimensional fan in R^2 at the origin with random rays and positive weights
inline TropicalCycle random_balanced_fan(std::mt19937_64& rng, int rays) {
  std::uniform_int_distribution<int> d(-4, 4), wt(1, 3);
  for (;;) {
    std::vector<IntVector> dirs;
    std::vector<Integer> ws;
    IntVector total = IntVector::Zero(2);
    for (int k = 0; k + 1 < rays; ++k) {
      IntVector v = ivec({d(rng), d(rng)});
      if (v.isZero()) continue;
      const Integer g = gcd(v(0), v(1));
      v /= g;
      dirs.push_back(v);
      ws.push_back(wt(rng));
      total += ws.back() * v;
    }
    if (total.isZero()) continue;
    const Integer g = gcd(total(0), total(1));
    dirs.push_back(-total / g);
    ws.push_back(g);
    bool distinct = true;
    for (std::size_t i = 0; i < dirs.size(); ++i)
      for (std::size_t j = i + 1; j < dirs.size(); ++j)
        if (dirs[i] == dirs[j]) distinct = false;
    if (!distinct) continue;
    std::vector<Polyhedron> cells;
    std::vector<Rational> weights;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      cells.push_back(ray(RatVector::Zero(2), dirs[i]));
      weights.push_back(to_rational(ws[i]));
    }
    return make_cycle(2, cells, weights);
  }
}

}  // namespace testing
