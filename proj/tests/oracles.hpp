#pragma once

// Independent geometric oracles: plain vectors of rationals, no library geometry.

#include "tropo/scalar.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <vector>

namespace oracle {

using tropo::Rational;
using P2 = std::array<Rational, 2>;
using P3 = std::array<Rational, 3>;

inline Rational cross(const P2& o, const P2& a, const P2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain
inline std::vector<P2> hull2(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<P2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// shoelace area of the convex hull
inline Rational area(const std::vector<P2>& pts) {
  const auto h = hull2(pts);
  Rational s = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto& a = h[i];
    const auto& b = h[(i + 1) % h.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return abs(s) / 2;
}

inline std::vector<P2> minkowski(const std::vector<P2>& a, const std::vector<P2>& b) {
  std::vector<P2> out;
  for (const auto& p : a)
    for (const auto& q : b) out.push_back({p[0] + q[0], p[1] + q[1]});
  return out;
}

// MV(P, Q) = area(P+Q) - area(P) - area(Q); MV(Δ, Δ) = 1 for the standard simplex
inline Rational mixed_volume2(const std::vector<P2>& a, const std::vector<P2>& b) {
  return area(minkowski(a, b)) - area(a) - area(b);
}

inline Rational det3(const P3& a, const P3& b, const P3& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

inline P3 sub3(const P3& a, const P3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

// volume of the convex hull of points in general enough position: brute-force facet search
// (triples whose plane leaves all points on one side), fanned from an interior point
inline Rational volume3(std::vector<P3> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n < 4) return 0;
  P3 c{0, 0, 0};
  for (const auto& p : pts)
    for (int k = 0; k < 3; ++k) c[k] += p[k] / Rational(static_cast<long>(n));
  Rational vol = 0;
  std::set<std::vector<std::size_t>> facets;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const P3 u = sub3(pts[j], pts[i]), v = sub3(pts[k], pts[i]);
        const P3 nrm{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
        if (nrm[0] == 0 && nrm[1] == 0 && nrm[2] == 0) continue;
        int pos = 0, neg = 0;
        std::vector<std::size_t> on;
        for (std::size_t t = 0; t < n; ++t) {
          const P3 w = sub3(pts[t], pts[i]);
          const Rational s = nrm[0] * w[0] + nrm[1] * w[1] + nrm[2] * w[2];
          if (s > 0) ++pos;
          else if (s < 0) ++neg;
          else on.push_back(t);
        }
        if (pos && neg) continue;
        if (!facets.insert(on).second) continue;
        // triangulate the facet polygon: order coplanar points by angle in the plane
        std::vector<P2> flat;
        int drop = 0;
        for (int a = 1; a < 3; ++a)
          if (abs(nrm[a]) > abs(nrm[drop])) drop = a;
        const int x = (drop + 1) % 3, y = (drop + 2) % 3;
        for (auto t : on) flat.push_back({pts[t][x], pts[t][y]});
        const auto h = hull2(flat);
        // signed pyramid volumes from c over fan triangles of the facet
        auto lift = [&](const P2& q) {
          for (auto t : on)
            if (pts[t][x] == q[0] && pts[t][y] == q[1]) return pts[t];
          return pts[on[0]];
        };
        for (std::size_t a = 1; a + 1 < h.size(); ++a) {
          const P3 p0 = lift(h[0]), p1 = lift(h[a]), p2 = lift(h[a + 1]);
          vol += abs(det3(sub3(p0, c), sub3(p1, c), sub3(p2, c))) / 6;
        }
      }
  return vol;
}

// ∫ x^e over the box Π [lo_i, hi_i] by Fubini
inline Rational box_monomial(const std::vector<Rational>& lo, const std::vector<Rational>& hi,
                             const std::vector<int>& e) {
  Rational v = 1;
  for (std::size_t i = 0; i < e.size(); ++i) {
    Rational a = 1, b = 1;
    for (int k = 0; k <= e[i]; ++k) {
      a *= lo[i];
      b *= hi[i];
    }
    v *= (b - a) / (e[i] + 1);
  }
  return v;
}

// ∫_a^b Σ c_k x^k dx
inline Rational integral1(const std::vector<Rational>& c, const Rational& a, const Rational& b) {
  Rational s = 0, pa = a, pb = b;
  for (std::size_t k = 0; k < c.size(); ++k) {
    s += c[k] * (pb - pa) / static_cast<long>(k + 1);
    pa *= a;
    pb *= b;
  }
  return s;
}

// coefficients of p * q
inline std::vector<Rational> mul1(const std::vector<Rational>& p, const std::vector<Rational>& q) {
  std::vector<Rational> r(p.size() + q.size() - 1, Rational(0));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

}  // namespace oracle
