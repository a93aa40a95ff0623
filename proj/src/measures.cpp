#include "tropo/measures.hpp"

#include "tropo/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tropo {

namespace {

struct LexLess {
  bool operator()(const RatVector& a, const RatVector& b) const { return lex_compare(a, b) < 0; }
};

Rational height_rec(const std::vector<PiecewisePolynomial>& phis, const TropicalCycle& C,
                    std::vector<std::size_t> order) {
  if (C.dim == 0) return integrate(to_measure(C), phis[order.front()]);
  const std::size_t peel = order.front();
  order.erase(order.begin());
  std::vector<PiecewisePolynomial> rest;
  for (std::size_t i : order) rest.push_back(phis[i]);
  const TropicalCycle D = prune(corner_locus(phis[peel], C));
  const PointMeasure mu = monge_ampere(rest, C);
  return height_rec(phis, D, order) + integrate(mu, phis[peel]);
}

// every k of the non-linearity loci meet |C| in dimension at most dim C - k
void require_proper(const std::vector<PiecewisePolynomial>& phis, const TropicalCycle& C) {
  std::vector<std::vector<Polyhedron>> kinks;
  for (const auto& phi : phis) kinks.push_back(prune(corner_locus(phi, fundamental_cycle(phi.ambient_rank))).cells);
  const auto rec = [&](auto&& self, const std::vector<Polyhedron>& cur, std::size_t next, int depth) -> void {
    for (std::size_t i = next; i < kinks.size(); ++i) {
      std::vector<Polyhedron> meet;
      for (const auto& a : cur)
        for (const auto& b : kinks[i]) {
          Polyhedron m = intersect(a, b);
          if (m.dim < 0) continue;
          if (m.dim > C.dim - depth - 1)
            throw Error(ErrorCode::ImproperIntersection,
                        "non-linearity loci meet the cycle in " + to_string(m));
          meet.push_back(std::move(m));
        }
      if (!meet.empty()) self(self, meet, i + 1, depth + 1);
    }
  };
  rec(rec, prune(C).cells, 0, 0);
}

}  // namespace

PointMeasure to_measure(const TropicalCycle& Z) {
  if (Z.dim != 0) throw Error(ErrorCode::WrongDimension, "a point measure needs a 0-dimensional cycle");
  std::map<RatVector, Rational, LexLess> mass;
  for (std::size_t i = 0; i < Z.size(); ++i) {
    const Rational w = Z.weights[i].eval(Z.cells[i].relint);
    mass[Z.cells[i].relint] += w;
  }
  PointMeasure mu;
  for (auto& [p, w] : mass)
    if (w != 0) mu.atoms.emplace_back(p, w);
  return mu;
}

Rational total_mass(const PointMeasure& mu) {
  Rational s = 0;
  for (const auto& [p, w] : mu.atoms) s += w;
  return s;
}

Rational integrate(const PointMeasure& mu, const PiecewisePolynomial& f) {
  Rational s = 0;
  for (const auto& [p, w] : mu.atoms) s += w * f(p);
  return s;
}

std::string to_string(const PointMeasure& mu) {
  std::string s = "{";
  for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
    if (i) s += ", ";
    s += to_string(mu.atoms[i].second) + " @ " + to_string(mu.atoms[i].first);
  }
  return s + "}";
}

void require_metric_function(const PiecewisePolynomial& phi) {
  if (!is_piecewise_linear(phi))
    throw Error(ErrorCode::InvalidInput, "metric functions must be piecewise linear with integral slopes");
}

PointMeasure monge_ampere(const std::vector<PiecewisePolynomial>& phis, const TropicalCycle& C) {
  if (static_cast<int>(phis.size()) != C.dim)
    throw Error(ErrorCode::WrongDimension, "need exactly dim C metric functions");
  for (const auto& phi : phis) require_metric_function(phi);
  if (phis.empty()) return to_measure(C);
  return to_measure(prune(iterated_corner_locus(phis, C)));
}

Rational local_height(const std::vector<PiecewisePolynomial>& phis, const TropicalCycle& C) {
  std::vector<std::size_t> order(phis.size());
  std::iota(order.rbegin(), order.rend(), std::size_t{0});
  return local_height(phis, C, order);
}

Rational local_height(const std::vector<PiecewisePolynomial>& phis, const TropicalCycle& C,
                      const std::vector<std::size_t>& order) {
  if (static_cast<int>(phis.size()) != C.dim + 1)
    throw Error(ErrorCode::WrongDimension, "need dim C + 1 metric functions");
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted.size() != phis.size() || sorted[i] != i) throw std::invalid_argument("order must be a permutation");
  for (const auto& phi : phis) require_metric_function(phi);
  require_proper(phis, C);
  return height_rec(phis, C, order);
}

Rational metric_change_delta(const PiecewisePolynomial& rho, const std::vector<PiecewisePolynomial>& rest,
                             const TropicalCycle& C) {
  require_metric_function(rho);
  return integrate(monge_ampere(rest, C), rho);
}

}  // namespace tropo
