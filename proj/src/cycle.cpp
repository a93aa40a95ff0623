#include "tropo/cycle.hpp"

#include "tropo/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropo {

namespace {

// ambient polynomial in r variables re-indexed into n variables starting at offset
Polynomial shift_vars(const Polynomial& f, int n, int offset) {
  std::vector<Polynomial> subs;
  for (int i = 0; i < f.nvars(); ++i) subs.push_back(Polynomial::variable(n, offset + i));
  if (f.nvars() == 0) return Polynomial::constant(n, f.constant_term());
  return f.substitute(subs);
}

// embeds cells of R^k into R^n at the given coordinate offset
std::vector<Constraint> embed(const std::vector<Constraint>& cs, int n, int offset) {
  std::vector<Constraint> out;
  for (const auto& c : cs) {
    RatVector a = RatVector::Zero(n);
    a.segment(offset, c.a.size()) = c.a;
    out.push_back({a, c.b});
  }
  return out;
}

}  // namespace

TropicalCycle make_cycle(int r, const std::vector<Polyhedron>& cells, const std::vector<Polynomial>& weights) {
  if (cells.size() != weights.size()) throw std::invalid_argument("one weight per cell required");
  TropicalCycle C;
  C.ambient_rank = r;
  C.dim = -1;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    Polyhedron P = canonical(cells[i]);
    if (P.ambient_rank != r) throw Error(ErrorCode::DimensionMismatch, "cell ambient rank differs");
    if (P.dim < 0) continue;
    if (C.dim >= 0 && P.dim != C.dim)
      throw Error(ErrorCode::NotPureDimensional,
                  "cells of dimension " + std::to_string(C.dim) + " and " + std::to_string(P.dim));
    C.dim = P.dim;
    if (weights[i].nvars() != r) throw Error(ErrorCode::DimensionMismatch, "weight arity differs");
    C.weights.push_back(restrict_to_hull(weights[i], P));
    C.cells.push_back(std::move(P));
  }
  if (C.dim < 0) C.dim = 0;
  return C;
}

TropicalCycle make_cycle(int r, const std::vector<Polyhedron>& cells, const std::vector<Rational>& weights) {
  std::vector<Polynomial> w;
  for (const auto& x : weights) w.push_back(Polynomial::constant(r, x));
  return make_cycle(r, cells, w);
}

TropicalCycle zero_cycle(int r, int dim) {
  TropicalCycle C;
  C.ambient_rank = r;
  C.dim = dim;
  return C;
}

TropicalCycle fundamental_cycle(int r) {
  return make_cycle(r, {Polyhedron::whole_space(r)}, std::vector<Rational>{1});
}

PolyhedralComplex complex_of(const TropicalCycle& C) { return make_complex(C.ambient_rank, C.cells); }

TropicalCycle prune(const TropicalCycle& C) {
  TropicalCycle out = zero_cycle(C.ambient_rank, C.dim);
  for (std::size_t i = 0; i < C.size(); ++i)
    if (!C.weights[i].is_zero()) {
      out.cells.push_back(C.cells[i]);
      out.weights.push_back(C.weights[i]);
    }
  return out;
}

bool has_empty_support(const TropicalCycle& C) {
  return std::all_of(C.weights.begin(), C.weights.end(), [](const Polynomial& w) { return w.is_zero(); });
}

BalancingReport check_balancing(const TropicalCycle& C) {
  const int r = C.ambient_rank;
  std::map<Polyhedron, std::vector<Polynomial>> sums;  // τ -> Σ m_σ ω_{σ,τ} componentwise
  for (std::size_t i = 0; i < C.size(); ++i) {
    if (C.cells[i].dim != C.dim) throw Error(ErrorCode::NotPureDimensional, "cell dimension differs");
    for (const auto& tau : facets(C.cells[i])) {
      const IntVector w = primitive_normal(C.cells[i], tau);
      auto [it, fresh] = sums.try_emplace(tau, std::vector<Polynomial>(r, Polynomial(r)));
      for (int k = 0; k < r; ++k)
        if (w(k) != 0) it->second[k] += C.weights[i] * to_rational(w(k));
    }
  }
  BalancingReport rep;
  for (const auto& [tau, vec] : sums) {
    std::vector<Polynomial> residual;
    bool zero = true;
    for (const auto& eq : tau.equalities) {
      Polynomial q(r);
      for (int k = 0; k < r; ++k)
        if (eq.a(k) != 0) q += vec[k] * eq.a(k);
      q = restrict_to_hull(q, tau);
      zero = zero && q.is_zero();
      residual.push_back(std::move(q));
    }
    if (!zero) {
      rep.balanced = false;
      rep.witness = tau;
      rep.residual = std::move(residual);
      return rep;
    }
  }
  return rep;
}

TropicalCycle scale(const TropicalCycle& C, const Rational& c) {
  TropicalCycle out = C;
  for (auto& w : out.weights) w *= c;
  return out;
}

TropicalCycle refine(const TropicalCycle& C, const std::vector<Hyperplane>& hs) {
  TropicalCycle out = zero_cycle(C.ambient_rank, C.dim);
  for (std::size_t i = 0; i < C.size(); ++i)
    for (auto& P : split(C.cells[i], hs)) {
      out.weights.push_back(restrict_to_hull(C.weights[i], P));
      out.cells.push_back(std::move(P));
    }
  return out;
}

TropicalCycle merge(const std::vector<TropicalCycle>& parts) {
  if (parts.empty()) throw std::invalid_argument("merge of no cycles");
  const int r = parts[0].ambient_rank, d = parts[0].dim;
  std::vector<Polyhedron> all;
  for (const auto& C : parts) {
    if (C.ambient_rank != r || C.dim != d)
      throw Error(ErrorCode::DimensionMismatch, "cycles of different rank or dimension");
    all.insert(all.end(), C.cells.begin(), C.cells.end());
  }
  const auto hs = hyperplanes_of(all);
  std::map<Polyhedron, Polynomial> acc;
  for (const auto& C : parts) {
    const TropicalCycle R = refine(C, hs);
    for (std::size_t i = 0; i < R.size(); ++i) {
      auto [it, fresh] = acc.try_emplace(R.cells[i], Polynomial(r));
      it->second += R.weights[i];
    }
  }
  TropicalCycle out = zero_cycle(r, d);
  for (auto& [P, w] : acc) {
    out.cells.push_back(P);
    out.weights.push_back(w);
  }
  return out;
}

TropicalCycle add(const TropicalCycle& C1, const TropicalCycle& C2) { return merge({C1, C2}); }

TropicalCycle localize(const TropicalCycle& C, const RatVector& omega) {
  TropicalCycle out = zero_cycle(C.ambient_rank, C.dim);
  bool in_support = false;
  for (std::size_t i = 0; i < C.size(); ++i) {
    if (C.weights[i].is_zero() || !contains(C.cells[i], omega)) continue;
    in_support = true;
    const Rational m = C.weights[i].eval(omega);
    if (m == 0) continue;
    out.cells.push_back(local_cone(C.cells[i], omega));
    out.weights.push_back(Polynomial::constant(C.ambient_rank, m));
  }
  if (!in_support) throw Error(ErrorCode::NotInSupport, "point " + to_string(omega) + " not in the support");
  return out;
}

Rational degree(const TropicalCycle& C) {
  if (C.dim != 0) throw Error(ErrorCode::WrongDimension, "degree needs a 0-dimensional cycle");
  Rational s = 0;
  for (std::size_t i = 0; i < C.size(); ++i) s += C.weights[i].eval(C.cells[i].relint);
  return s;
}

bool cycles_equal(const TropicalCycle& C1, const TropicalCycle& C2) {
  if (C1.ambient_rank != C2.ambient_rank) return false;
  const TropicalCycle a = prune(C1), b = prune(C2);
  if (a.dim != b.dim) return a.cells.empty() && b.cells.empty();
  if (a.cells == b.cells && a.weights == b.weights) return true;
  const TropicalCycle diff = prune(merge({a, scale(b, -1)}));
  return diff.cells.empty();
}

TropicalCycle product(const TropicalCycle& C1, const TropicalCycle& C2) {
  const int r1 = C1.ambient_rank, r2 = C2.ambient_rank, n = r1 + r2;
  std::vector<Polyhedron> cells;
  std::vector<Polynomial> weights;
  for (std::size_t i = 0; i < C1.size(); ++i)
    for (std::size_t j = 0; j < C2.size(); ++j) {
      Polyhedron P;
      P.ambient_rank = n;
      P.inequalities = embed(C1.cells[i].inequalities, n, 0);
      auto more = embed(C2.cells[j].inequalities, n, r1);
      P.inequalities.insert(P.inequalities.end(), more.begin(), more.end());
      P.equalities = embed(C1.cells[i].equalities, n, 0);
      more = embed(C2.cells[j].equalities, n, r1);
      P.equalities.insert(P.equalities.end(), more.begin(), more.end());
      cells.push_back(P);
      weights.push_back(shift_vars(C1.weights[i], n, 0) * shift_vars(C2.weights[j], n, r1));
    }
  TropicalCycle out = make_cycle(n, cells, weights);
  out.dim = C1.dim + C2.dim;
  return out;
}

std::string to_string(const TropicalCycle& C) {
  std::string s = "cycle(rank " + std::to_string(C.ambient_rank) + ", dim " + std::to_string(C.dim) + ")\n";
  for (std::size_t i = 0; i < C.size(); ++i) s += "  " + to_string(C.cells[i]) + " : " + C.weights[i].str() + "\n";
  return s;
}

}  // namespace tropo
