#include "tropo/complex.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropo {

namespace {

bool dim_then_order(const Polyhedron& P, const Polyhedron& Q) {
  if (P.dim != Q.dim) return P.dim < Q.dim;
  return P < Q;
}

}  // namespace

std::vector<Polyhedron> PolyhedralComplex::maximal() const {
  std::vector<bool> is_child(cells.size(), false);
  for (const auto& [c, p] : face_relation) is_child[c] = true;
  std::vector<Polyhedron> out;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (!is_child[i]) out.push_back(cells[i]);
  return out;
}

std::vector<Polyhedron> PolyhedralComplex::cells_of_dim(int d) const {
  std::vector<Polyhedron> out;
  for (const auto& c : cells)
    if (c.dim == d) out.push_back(c);
  return out;
}

int PolyhedralComplex::dim() const { return cells.empty() ? -1 : cells.back().dim; }

std::vector<Polyhedron> face_closure(const std::vector<Polyhedron>& cells) {
  std::set<Polyhedron> seen;
  std::vector<Polyhedron> frontier;
  for (const auto& c : cells) {
    const Polyhedron cc = canonical(c);
    if (cc.dim >= 0 && seen.insert(cc).second) frontier.push_back(cc);
  }
  while (!frontier.empty()) {
    std::vector<Polyhedron> next;
    for (const auto& P : frontier)
      for (auto& F : facets(P))
        if (seen.insert(F).second) next.push_back(std::move(F));
    frontier = std::move(next);
  }
  std::vector<Polyhedron> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), dim_then_order);
  return out;
}

PolyhedralComplex make_complex(int r, const std::vector<Polyhedron>& generators) {
  PolyhedralComplex C;
  C.ambient_rank = r;
  C.cells = face_closure(generators);
  std::map<Polyhedron, int> index;
  for (std::size_t i = 0; i < C.cells.size(); ++i) index.emplace(C.cells[i], static_cast<int>(i));
  for (std::size_t i = 0; i < C.cells.size(); ++i)
    for (const auto& F : facets(C.cells[i])) C.face_relation.emplace_back(index.at(F), static_cast<int>(i));
  std::sort(C.face_relation.begin(), C.face_relation.end());
  return C;
}

bool is_valid_complex(const PolyhedralComplex& C) {
  std::set<Polyhedron> all(C.cells.begin(), C.cells.end());
  for (const auto& P : C.cells)
    for (const auto& F : facets(P))
      if (!all.count(F)) return false;
  const auto top = C.maximal();
  for (std::size_t i = 0; i < top.size(); ++i)
    for (std::size_t j = i + 1; j < top.size(); ++j) {
      const Polyhedron I = intersect(top[i], top[j]);
      if (I.dim < 0) continue;
      if (!is_face(I, top[i]) || !is_face(I, top[j])) return false;
    }
  return true;
}

PolyhedralComplex common_refinement(const PolyhedralComplex& C1, const PolyhedralComplex& C2) {
  std::set<Polyhedron> pieces;
  for (const auto& s1 : C1.maximal())
    for (const auto& s2 : C2.maximal()) {
      Polyhedron I = intersect(s1, s2);
      if (I.dim >= 0) pieces.insert(std::move(I));
    }
  std::vector<Polyhedron> v(pieces.begin(), pieces.end());
  std::sort(v.begin(), v.end(), [](const Polyhedron& P, const Polyhedron& Q) { return P.dim > Q.dim; });
  std::vector<Polyhedron> kept;
  for (const auto& P : v) {
    bool covered = false;
    for (const auto& K : kept)
      if (K.dim > P.dim && is_subset(P, K)) {
        covered = true;
        break;
      }
    if (!covered) kept.push_back(P);
  }
  return make_complex(C1.ambient_rank, kept);
}

bool operator<(const Hyperplane& h, const Hyperplane& k) {
  if (int c = lex_compare(h.a, k.a)) return c < 0;
  return h.b < k.b;
}

std::vector<Hyperplane> hyperplanes_of(const std::vector<Polyhedron>& cells) {
  std::set<Hyperplane> hs;
  auto add = [&](const Constraint& c) {
    IntVector prim;
    const Rational s = clear_denominators(c.a, prim);
    RatVector a = to_rational(prim);
    Rational b = c.b * s;
    Eigen::Index k = 0;
    while (a(k) == 0) ++k;
    if (a(k) < 0) {
      a = -a;
      b = -b;
    }
    hs.insert({a, b});
  };
  for (const auto& P : cells) {
    const Polyhedron cp = canonical(P);
    if (cp.dim < 0) continue;
    for (const auto& c : cp.inequalities) add(c);
    for (const auto& c : cp.equalities) add(c);
  }
  return {hs.begin(), hs.end()};
}

bool cuts(const Hyperplane& h, const Polyhedron& P) {
  if (P.dim <= 0 || (h.a.transpose() * P.directions).isZero()) return false;
  const Rational at = h.a.dot(P.relint) - h.b;
  if (at == 0) return true;
  const auto res = lp_optimize(h.a, P, at > 0 ? Sense::Min : Sense::Max);
  if (res.status == LpStatus::Unbounded) return true;
  return at > 0 ? res.value < h.b : res.value > h.b;
}

std::vector<Polyhedron> split(const Polyhedron& P, const std::vector<Hyperplane>& hs) {
  std::vector<Polyhedron> work{canonical(P)};
  if (work[0].dim < 0) return {};
  for (const auto& h : hs) {
    std::vector<Polyhedron> next;
    for (auto& Q : work) {
      if (!cuts(h, Q)) {
        next.push_back(std::move(Q));
        continue;
      }
      for (int s : {1, -1}) {
        Polyhedron half = Q;
        half.is_canonical = false;
        half.inequalities.push_back({RatVector(h.a * Rational(s)), h.b * s});
        next.push_back(canonical(half));
      }
    }
    work = std::move(next);
  }
  std::sort(work.begin(), work.end());
  return work;
}

}  // namespace tropo
