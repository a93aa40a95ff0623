#include "tropo/divisors.hpp"

#include "tropo/complex.hpp"
#include "tropo/error.hpp"
#include "tropo/parallel.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropo {

namespace {

Polynomial affine_poly(const AffineFunction& f) { return Polynomial::affine(f.a, f.b); }

PiecewisePolynomial extremum_of(int r, const std::vector<AffineFunction>& fs, int sign) {
  std::vector<Polyhedron> cells;
  std::vector<Polynomial> pieces;
  std::set<std::pair<std::vector<Rational>, Rational>> seen;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    std::vector<Rational> key(fs[i].a.data(), fs[i].a.data() + r);
    if (!seen.insert({key, fs[i].b}).second) continue;
    std::vector<Constraint> in;
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (j == i) continue;
      const RatVector d = sign * (fs[i].a - fs[j].a);
      in.push_back({d, sign * (fs[j].b - fs[i].b)});
    }
    Polyhedron P = make_polyhedron(r, in);
    if (P.dim != r) continue;
    cells.push_back(std::move(P));
    pieces.push_back(affine_poly(fs[i]));
  }
  return make_piecewise(r, cells, pieces);
}

// pieces of φ joined on the union of their domains, assumed to share the complex
PiecewisePolynomial combine(const PiecewisePolynomial& f, const PiecewisePolynomial& g, const Rational& s) {
  if (f.ambient_rank != g.ambient_rank) throw Error(ErrorCode::DimensionMismatch, "function ranks differ");
  std::vector<Polyhedron> cells;
  std::vector<Polynomial> pieces;
  for (std::size_t i = 0; i < f.cells.size(); ++i)
    for (std::size_t j = 0; j < g.cells.size(); ++j) {
      Polyhedron P = intersect(f.cells[i], g.cells[j]);
      if (P.dim < 0) continue;
      cells.push_back(std::move(P));
      pieces.push_back(f.pieces[i] + g.pieces[j] * s);
    }
  // keep inclusion-maximal cells
  std::vector<std::size_t> order(cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cells[a].dim > cells[b].dim; });
  std::vector<Polyhedron> kc;
  std::vector<Polynomial> kp;
  for (std::size_t idx : order) {
    bool covered = false;
    for (const auto& K : kc)
      if (K.dim >= cells[idx].dim && is_subset(cells[idx], K)) {
        covered = true;
        break;
      }
    if (covered) continue;
    kc.push_back(cells[idx]);
    kp.push_back(pieces[idx]);
  }
  return make_piecewise(f.ambient_rank, kc, kp);
}

}  // namespace

std::optional<std::size_t> PiecewisePolynomial::locate(const RatVector& x) const {
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (contains(cells[i], x)) return i;
  return std::nullopt;
}

Rational PiecewisePolynomial::operator()(const RatVector& x) const {
  const auto i = locate(x);
  if (!i) throw Error(ErrorCode::NotInSupport, "point " + to_string(x) + " outside the domain");
  return pieces[*i].eval(x);
}

bool is_continuous(const PiecewisePolynomial& f) {
  for (std::size_t i = 0; i < f.cells.size(); ++i)
    for (std::size_t j = i + 1; j < f.cells.size(); ++j) {
      const Polyhedron I = intersect(f.cells[i], f.cells[j]);
      if (I.dim < 0) continue;
      if (!restrict_to_hull(f.pieces[i] - f.pieces[j], I).is_zero()) return false;
    }
  return true;
}

PiecewisePolynomial make_piecewise(int r, const std::vector<Polyhedron>& cells,
                                   const std::vector<Polynomial>& pieces) {
  if (cells.size() != pieces.size()) throw std::invalid_argument("one piece per cell required");
  PiecewisePolynomial f;
  f.ambient_rank = r;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    Polyhedron P = canonical(cells[i]);
    if (P.dim < 0) continue;
    if (pieces[i].nvars() != r) throw Error(ErrorCode::DimensionMismatch, "piece arity differs");
    f.pieces.push_back(restrict_to_hull(pieces[i], P));
    f.cells.push_back(std::move(P));
  }
  if (!is_continuous(f)) throw Error(ErrorCode::ContinuityViolation, "pieces disagree on a shared face");
  return f;
}

PiecewisePolynomial global_function(const Polynomial& f) {
  return make_piecewise(f.nvars(), {Polyhedron::whole_space(f.nvars())}, {f});
}

PiecewisePolynomial max_of(int r, const std::vector<AffineFunction>& fs) { return extremum_of(r, fs, 1); }
PiecewisePolynomial min_of(int r, const std::vector<AffineFunction>& fs) { return extremum_of(r, fs, -1); }

PiecewisePolynomial operator+(const PiecewisePolynomial& f, const PiecewisePolynomial& g) {
  return combine(f, g, 1);
}

PiecewisePolynomial operator-(const PiecewisePolynomial& f) { return Rational(-1) * f; }

PiecewisePolynomial operator*(const Rational& c, const PiecewisePolynomial& f) {
  PiecewisePolynomial g = f;
  for (auto& p : g.pieces) p *= c;
  return g;
}

bool is_piecewise_linear(const PiecewisePolynomial& f) {
  for (const auto& p : f.pieces) {
    if (p.degree() > 1) return false;
    for (const auto& [e, c] : p.terms())
      if (std::count(e.begin(), e.end(), 1) == 1 && !is_integer(c)) return false;
  }
  return true;
}

TropicalCycle to_cycle(const PiecewisePolynomial& f) {
  TropicalCycle C = make_cycle(f.ambient_rank, f.cells, f.pieces);
  if (!C.cells.empty() && C.dim != f.ambient_rank)
    throw Error(ErrorCode::WrongDimension, "function domain is not full-dimensional");
  C.dim = f.ambient_rank;
  return C;
}

PiecewisePolynomial from_cycle(const TropicalCycle& C) {
  if (C.dim != C.ambient_rank) throw Error(ErrorCode::WrongDimension, "cycle is not of codimension 0");
  return make_piecewise(C.ambient_rank, C.cells, C.weights);
}

Refinement refine_for(const PiecewisePolynomial& phi, const TropicalCycle& C) {
  if (phi.ambient_rank != C.ambient_rank) throw Error(ErrorCode::DimensionMismatch, "ranks differ");
  const TropicalCycle R = refine(C, hyperplanes_of(phi.cells));
  Refinement out{zero_cycle(C.ambient_rank, C.dim), {}};
  for (std::size_t i = 0; i < R.size(); ++i) {
    const auto k = phi.locate(R.cells[i].relint);
    if (!k || !is_subset(R.cells[i], phi.cells[*k])) {
      if (R.weights[i].is_zero()) continue;
      throw Error(ErrorCode::SupportMismatch, "cycle cell " + to_string(R.cells[i]) + " leaves the domain");
    }
    out.cycle.cells.push_back(R.cells[i]);
    out.cycle.weights.push_back(R.weights[i]);
    out.phi.push_back(restrict_to_hull(phi.pieces[*k], R.cells[i]));
  }
  return out;
}

namespace {

struct Adjacent {
  std::size_t cell;
  IntVector normal;
};

Polynomial corner_weight(const Refinement& R, const Polyhedron& tau, const std::vector<Adjacent>& adj) {
  const int r = R.cycle.ambient_rank;
  Polynomial m(r);
  std::vector<Polynomial> omega_tau(r, Polynomial(r));
  for (const auto& a : adj) {
    const RatVector w = to_rational(a.normal);
    const Polynomial& ms = R.cycle.weights[a.cell];
    m += ms * R.phi[a.cell].gradient_dot(w);
    for (int k = 0; k < r; ++k)
      if (w(k) != 0) omega_tau[k] += ms * w(k);
  }
  m -= contract_gradient(R.phi[adj.front().cell], omega_tau);
  return restrict_to_hull(m, tau);
}

}  // namespace

TropicalCycle corner_locus(const PiecewisePolynomial& phi, const TropicalCycle& C) {
  if (C.dim == 0) throw Error(ErrorCode::WrongDimension, "corner locus of a 0-dimensional cycle");
  const Refinement R = refine_for(phi, C);
  const int r = C.ambient_rank;

  std::map<Polyhedron, std::vector<Adjacent>> faces;
  for (std::size_t i = 0; i < R.cycle.size(); ++i)
    for (const auto& tau : facets(R.cycle.cells[i]))
      faces[tau].push_back({i, primitive_normal(R.cycle.cells[i], tau)});

  std::vector<const std::pair<const Polyhedron, std::vector<Adjacent>>*> items;
  for (const auto& f : faces) items.push_back(&f);
  std::vector<Polynomial> weights(items.size(), Polynomial(r));
  parallel_for(items.size(), [&](std::size_t k) {
    const auto& [tau, adj] = *items[k];
    weights[k] = corner_weight(R, tau, adj);
#ifndef NDEBUG
    // the weight does not depend on the representatives ω_{σ,τ}
    const IntMatrix nt = lattice_of(tau).basis;
    if (nt.cols() > 0) {
      auto shifted = adj;
      for (std::size_t s = 0; s < shifted.size(); ++s) shifted[s].normal += nt.col(s % nt.cols()) * Integer(s + 1);
      if (corner_weight(R, tau, shifted) != weights[k])
        throw Error(ErrorCode::PreconditionViolated, "corner weight depends on the normal representatives");
    }
#endif
  });

  std::vector<Polyhedron> cells;
  for (const auto* it : items) cells.push_back(it->first);
  TropicalCycle out = prune(make_cycle(r, cells, weights));
  out.dim = C.dim - 1;
  return out;
}

TropicalCycle iterated_corner_locus(const std::vector<PiecewisePolynomial>& phis, const TropicalCycle& C,
                                    bool check_proper) {
  TropicalCycle cur = C;
  for (const auto& phi : phis) {
    if (check_proper && !has_empty_support(cur)) {
      const TropicalCycle kinks = corner_locus(phi, fundamental_cycle(phi.ambient_rank));
      for (const auto& s : prune(cur).cells)
        for (const auto& k : kinks.cells)
          if (intersect(s, k).dim >= s.dim)
            throw Error(ErrorCode::ImproperIntersection,
                        "cell " + to_string(s) + " lies in the non-linearity locus");
    }
    cur = corner_locus(phi, cur);
  }
  return cur;
}

PiecewisePolynomial pullback_function(const IntegralAffineMap& F, const PiecewisePolynomial& phi) {
  const int n = F.source_rank();
  std::vector<Polynomial> subs;
  for (int i = 0; i < F.target_rank(); ++i)
    subs.push_back(Polynomial::affine(to_rational(IntVector(F.linear.row(i).transpose())), F.translation(i)));
  std::vector<Polyhedron> pre;
  std::vector<Polynomial> pieces;
  for (std::size_t i = 0; i < phi.cells.size(); ++i) {
    Polyhedron P = affine_preimage(F, phi.cells[i]);
    if (P.dim < 0) continue;
    pre.push_back(std::move(P));
    pieces.push_back(subs.empty() ? Polynomial::constant(n, phi.pieces[i].constant_term())
                                  : phi.pieces[i].substitute(subs));
  }
  std::vector<Polyhedron> kc;
  std::vector<Polynomial> kp;
  std::vector<std::size_t> order(pre.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pre[a].dim > pre[b].dim; });
  for (std::size_t idx : order) {
    bool covered = false;
    for (const auto& K : kc)
      if (is_subset(pre[idx], K)) {
        covered = true;
        break;
      }
    if (covered) continue;
    kc.push_back(pre[idx]);
    kp.push_back(pieces[idx]);
  }
  return make_piecewise(n, kc, kp);
}

}  // namespace tropo
