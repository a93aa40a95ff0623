#include "tropo/intersection.hpp"

#include "tropo/error.hpp"
#include "tropo/linalg.hpp"
#include "tropo/parallel.hpp"

#include <map>
#include <random>
#include <set>

namespace tropo {

namespace {

std::vector<Integer> key_of(const Sublattice& L) {
  std::vector<Integer> k{L.ambient_rank, L.rank()};
  for (Eigen::Index j = 0; j < L.basis.cols(); ++j)
    for (Eigen::Index i = 0; i < L.basis.rows(); ++i) k.push_back(L.basis(i, j));
  return k;
}

std::vector<Sublattice> dedupe(const std::vector<Sublattice>& ls) {
  std::map<std::vector<Integer>, Sublattice> m;
  for (const auto& L : ls) m.emplace(key_of(L), L);
  std::vector<Sublattice> out;
  for (auto& [k, L] : m) out.push_back(L);
  return out;
}

RatVector candidate(std::mt19937_64& rng, int r, long bound) {
  RatVector v(r);
  const auto width = static_cast<std::uint64_t>(2 * bound + 1);
  for (int i = 0; i < r; ++i) v(i) = static_cast<long>(rng() % width) - bound;
  return v;
}

Polynomial compose_affine(const Polynomial& m, const IntegralAffineMap& F) {
  const int n = F.source_rank();
  std::vector<Polynomial> subs;
  for (int i = 0; i < F.target_rank(); ++i)
    subs.push_back(Polynomial::affine(to_rational(IntVector(F.linear.row(i).transpose())), F.translation(i)));
  if (subs.empty()) return Polynomial::constant(n, m.constant_term());
  return m.substitute(subs);
}

Polyhedron linear_span_polyhedron(int r, const RatMatrix& gens) {
  const RatMatrix ann = nullspace(RatMatrix(gens.transpose()));
  std::vector<Constraint> eqs;
  for (Eigen::Index j = 0; j < ann.cols(); ++j) eqs.push_back({ann.col(j), 0});
  return make_polyhedron(r, {}, eqs);
}

}  // namespace

std::vector<Sublattice> face_spans(const std::vector<Polyhedron>& cells) {
  std::vector<Sublattice> spans;
  for (const auto& F : face_closure(cells)) spans.push_back(lattice_of(F));
  return dedupe(spans);
}

GenericVector find_generic_vector(int r, const std::vector<Sublattice>& family_a,
                                  const std::vector<Sublattice>& family_b, std::uint64_t seed, int budget) {
  std::vector<Sublattice> sums;
  for (const auto& a : family_a)
    for (const auto& b : family_b) sums.push_back(saturation(r, hstack(a.basis, b.basis)));
  sums = dedupe(sums);

  GenericVector g;
  g.seed = seed;
  std::mt19937_64 rng(seed);
  long bound = 4;
  for (int attempt = 1; attempt <= budget; ++attempt) {
    if (attempt % 16 == 0) bound *= 2;
    const RatVector v = candidate(rng, r, bound);
    if (r > 0 && v.isZero()) continue;
    bool ok = true;
    std::vector<TransversalityFact> cert;
    for (const auto& S : sums) {
      const bool full = S.rank() == r;
      if (!full && in_column_span(to_rational(S.basis), v)) {
        ok = false;
        break;
      }
      cert.push_back({S, full});
    }
    if (ok) {
      g.v = v;
      g.attempts = attempt;
      g.certificate = std::move(cert);
      return g;
    }
  }
  throw Error(ErrorCode::SearchExhausted, "no generic vector after " + std::to_string(budget) + " candidates");
}

GenericVector find_generic_vector(const PolyhedralComplex& C, std::uint64_t seed) {
  const auto spans = face_spans(C.cells);
  return find_generic_vector(C.ambient_rank, spans, spans, seed);
}

TropicalCycle stable_intersection_with(const TropicalCycle& C1, const TropicalCycle& C2, const RatVector& v) {
  const int r = C1.ambient_rank;
  const int d = C1.dim + C2.dim - r;
  const TropicalCycle a = prune(C1), b = prune(C2);

  std::map<Polyhedron, std::vector<std::pair<std::size_t, std::size_t>>> groups;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (rank(hstack(a.cells[i].directions, b.cells[j].directions)) != r) continue;
      Polyhedron tau = intersect(a.cells[i], b.cells[j]);
      if (tau.dim != d) continue;
      groups[std::move(tau)].emplace_back(i, j);
    }

  std::vector<const std::pair<const Polyhedron, std::vector<std::pair<std::size_t, std::size_t>>>*> items;
  for (const auto& g : groups) items.push_back(&g);
  std::vector<Polynomial> weights(items.size(), Polynomial(r));
  parallel_for(items.size(), [&](std::size_t k) {
    const auto& [tau, pairs] = *items[k];
    const RatVector& omega = tau.relint;
    Polynomial w(r);
    for (const auto& [i, j] : pairs) {
      if (!displaced_meets(local_cone(a.cells[i], omega), local_cone(b.cells[j], omega), v)) continue;
      const auto idx = lattice_index(r, lattice_of(a.cells[i]).basis, lattice_of(b.cells[j]).basis);
      w += (a.weights[i] * b.weights[j]) * to_rational(*idx);
    }
    weights[k] = std::move(w);
  });

  std::vector<Polyhedron> cells;
  for (const auto* it : items) cells.push_back(it->first);
  TropicalCycle out = prune(make_cycle(r, cells, weights));
  out.dim = d;
  return out;
}

TropicalCycle stable_intersection(const TropicalCycle& C1, const TropicalCycle& C2, std::uint64_t seed) {
  if (C1.ambient_rank != C2.ambient_rank) throw Error(ErrorCode::DimensionMismatch, "ambient ranks differ");
  const int r = C1.ambient_rank;
  if (C1.codim() + C2.codim() > r)
    throw Error(ErrorCode::PreconditionViolated, "codimensions add up to more than the ambient rank");
  const TropicalCycle a = prune(C1), b = prune(C2);
  const auto g = find_generic_vector(r, face_spans(a.cells), face_spans(b.cells), seed);
  return stable_intersection_with(a, b, g.v);
}

TropicalCycle pushforward(const IntegralAffineMap& F, const TropicalCycle& C) {
  const int m = F.target_rank();
  if (F.source_rank() != C.ambient_rank) throw Error(ErrorCode::DimensionMismatch, "map source rank differs");
  const RatMatrix A = to_rational(F.linear);
  std::vector<TropicalCycle> images;
  for (std::size_t i = 0; i < C.size(); ++i) {
    if (C.weights[i].is_zero()) continue;
    const Polyhedron& s = C.cells[i];
    const RatMatrix M = A * s.directions;
    if (rank(M) < s.dim) continue;
    const Polyhedron nu = affine_image(F, s);
    const IntMatrix img = F.linear * lattice_of(s).basis;
    Integer index = 1;
    for (const auto& e : elementary_divisors(img)) index *= e;

    // x = p + B G (y - q) on the image
    const RatVector q = F.apply(s.relint);
    Polynomial w(m);
    if (s.dim == 0) {
      w = Polynomial::constant(m, C.weights[i].eval(s.relint));
    } else {
      const RatMatrix BG = s.directions * left_inverse(M);
      const RatVector c = s.relint - BG * q;
      std::vector<Polynomial> subs;
      for (int k = 0; k < C.ambient_rank; ++k) subs.push_back(Polynomial::affine(BG.row(k).transpose(), c(k)));
      w = C.weights[i].substitute(subs);
    }
    images.push_back(make_cycle(m, {nu}, std::vector<Polynomial>{w * to_rational(index)}));
  }
  if (images.empty()) return zero_cycle(m, C.dim);
  TropicalCycle out = prune(merge(images));
  out.dim = C.dim;
  return out;
}

TropicalCycle pullback(const IntegralAffineMap& F, const TropicalCycle& C, std::uint64_t seed) {
  const int r = C.ambient_rank, rp = F.source_rank();
  if (F.target_rank() != r) throw Error(ErrorCode::DimensionMismatch, "map target rank differs");
  const int l = C.codim();
  if (l > r) throw Error(ErrorCode::PreconditionViolated, "codimension exceeds target rank");
  const TropicalCycle a = prune(C);
  const RatMatrix A = to_rational(F.linear);
  const auto g = find_generic_vector(r, {saturation(r, F.linear)}, face_spans(a.cells), seed);
  const Polyhedron W = linear_span_polyhedron(r, A);

  std::vector<bool> transverse(a.size());
  std::set<Polyhedron> candidates;
  for (std::size_t i = 0; i < a.size(); ++i) {
    transverse[i] = rank(hstack(A, a.cells[i].directions)) == r;
    if (!transverse[i]) continue;
    Polyhedron gamma = affine_preimage(F, a.cells[i]);
    if (gamma.dim == rp - l) candidates.insert(std::move(gamma));
  }
  std::vector<Polyhedron> cells(candidates.begin(), candidates.end());
  std::vector<Polynomial> weights(cells.size(), Polynomial(rp));
  parallel_for(cells.size(), [&](std::size_t k) {
    const RatVector y = F.apply(cells[k].relint);
    Polynomial w(rp);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!transverse[i] || !contains(a.cells[i], y)) continue;
      if (!displaced_meets(W, local_cone(a.cells[i], y), g.v)) continue;
      const auto idx = lattice_index(r, F.linear, lattice_of(a.cells[i]).basis);
      w += compose_affine(a.weights[i], F) * to_rational(*idx);
    }
    weights[k] = std::move(w);
  });
  TropicalCycle out = prune(make_cycle(rp, cells, weights));
  out.dim = rp - l;
  return out;
}

TropicalCycle graph_cycle(const IntegralAffineMap& F) {
  const int rp = F.source_rank(), r = F.target_rank(), n = rp + r;
  std::vector<Constraint> eqs;
  for (int i = 0; i < r; ++i) {
    RatVector a = RatVector::Zero(n);
    for (int j = 0; j < rp; ++j) a(j) = -to_rational(F.linear(i, j));
    a(rp + i) = 1;
    eqs.push_back({a, F.translation(i)});
  }
  return make_cycle(n, {make_polyhedron(n, {}, eqs)}, std::vector<Rational>{1});
}

TropicalCycle pullback_via_graph(const IntegralAffineMap& F, const TropicalCycle& C, std::uint64_t seed) {
  const int rp = F.source_rank(), r = F.target_rank();
  const TropicalCycle lifted = product(fundamental_cycle(rp), C);
  const TropicalCycle cut = stable_intersection(lifted, graph_cycle(F), seed);
  IntMatrix p1 = IntMatrix::Zero(rp, rp + r);
  for (int i = 0; i < rp; ++i) p1(i, i) = 1;
  return pushforward(IntegralAffineMap{p1, RatVector::Zero(rp)}, cut);
}

}  // namespace tropo
