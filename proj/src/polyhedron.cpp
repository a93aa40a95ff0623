#include "tropo/polyhedron.hpp"

#include "tropo/error.hpp"
#include "tropo/linalg.hpp"
#include "tropo/polynomial.hpp"

#include <algorithm>
#include <set>

namespace tropo {

namespace {

struct System {
  RatMatrix A;
  RatVector b;
  RatMatrix E;
  RatVector f;
};

System assemble(int r, const std::vector<Constraint>& ineqs, const std::vector<Constraint>& eqs) {
  System s{RatMatrix(ineqs.size(), r), RatVector(ineqs.size()), RatMatrix(eqs.size(), r),
           RatVector(eqs.size())};
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    s.A.row(i) = ineqs[i].a.transpose();
    s.b(i) = ineqs[i].b;
  }
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    s.E.row(i) = eqs[i].a.transpose();
    s.f(i) = eqs[i].b;
  }
  return s;
}

struct Analysis {
  bool empty = false;
  std::vector<bool> implicit;
  RatVector relint;
};

// max s over {a_i x - s >= b_i (i in strict), a_j x = b_j (j implicit), s <= 1}
LpResult max_slack(int r, const std::vector<Constraint>& ineqs, const std::vector<bool>& implicit,
                   const std::vector<Constraint>& eqs) {
  std::vector<Constraint> in, eq;
  auto ext = [r](const RatVector& a, const Rational& coef) {
    RatVector v(r + 1);
    v.head(r) = a;
    v(r) = coef;
    return v;
  };
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    if (implicit[i]) eq.push_back({ext(ineqs[i].a, 0), ineqs[i].b});
    else in.push_back({ext(ineqs[i].a, -1), ineqs[i].b});
  }
  RatVector cap = RatVector::Zero(r + 1);
  cap(r) = -1;
  in.push_back({cap, -1});
  for (const auto& e : eqs) eq.push_back({ext(e.a, 0), e.b});
  const System s = assemble(r + 1, in, eq);
  RatVector c = RatVector::Zero(r + 1);
  c(r) = 1;
  return lp_solve(c, s.A, s.b, s.E, s.f, Sense::Max);
}

Analysis analyze(int r, const std::vector<Constraint>& ineqs, const std::vector<Constraint>& eqs) {
  Analysis an;
  const std::size_t m = ineqs.size();
  an.implicit.assign(m, false);
  auto first = max_slack(r, ineqs, an.implicit, eqs);
  if (first.status != LpStatus::Optimal || first.value < 0) {
    an.empty = true;
    return an;
  }
  if (first.value > 0 || m == 0) {
    an.relint = first.witness.head(r);
    return an;
  }
  // some inequalities are implicit equalities: find which by maximizing a sum of capped slacks
  std::vector<bool> known_strict(m, false);
  for (;;) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < m; ++i)
      if (!known_strict[i]) open.push_back(i);
    if (open.empty()) break;
    const int nv = r + static_cast<int>(open.size());
    std::vector<Constraint> in, eq;
    std::vector<int> slot(m, -1);
    for (std::size_t k = 0; k < open.size(); ++k) slot[open[k]] = static_cast<int>(k);
    for (std::size_t i = 0; i < m; ++i) {
      RatVector v = RatVector::Zero(nv);
      v.head(r) = ineqs[i].a;
      if (slot[i] >= 0) v(r + slot[i]) = -1;
      in.push_back({v, ineqs[i].b});
    }
    for (std::size_t k = 0; k < open.size(); ++k) {
      RatVector lo = RatVector::Zero(nv), hi = RatVector::Zero(nv);
      lo(r + k) = 1;
      hi(r + k) = -1;
      in.push_back({lo, 0});
      in.push_back({hi, -1});
    }
    for (const auto& e : eqs) {
      RatVector v = RatVector::Zero(nv);
      v.head(r) = e.a;
      eq.push_back({v, e.b});
    }
    const System s = assemble(nv, in, eq);
    RatVector c = RatVector::Zero(nv);
    for (std::size_t k = 0; k < open.size(); ++k) c(r + k) = 1;
    const auto res = lp_solve(c, s.A, s.b, s.E, s.f, Sense::Max);
    bool progress = false;
    for (std::size_t k = 0; k < open.size(); ++k)
      if (res.witness(r + k) > 0) {
        known_strict[open[k]] = true;
        progress = true;
      }
    if (!progress) break;
  }
  for (std::size_t i = 0; i < m; ++i) an.implicit[i] = !known_strict[i];
  auto rel = max_slack(r, ineqs, an.implicit, eqs);
  an.relint = rel.witness.head(r);
  return an;
}

int compare_constraint(const Constraint& x, const Constraint& y) {
  if (int c = lex_compare(x.a, y.a)) return c;
  if (x.b < y.b) return -1;
  if (y.b < x.b) return 1;
  return 0;
}

Polyhedron empty_polyhedron(int r) {
  Polyhedron p;
  p.ambient_rank = r;
  p.is_canonical = true;
  p.dim = -1;
  return p;
}

Rational dot(const RatVector& a, const RatVector& x) { return a.dot(x); }

}  // namespace

Polyhedron Polyhedron::whole_space(int r) { return make_polyhedron(r, {}, {}); }

Polyhedron Polyhedron::point(const RatVector& p) {
  const int r = static_cast<int>(p.size());
  std::vector<Constraint> eqs;
  for (int i = 0; i < r; ++i) {
    RatVector e = RatVector::Zero(r);
    e(i) = 1;
    eqs.push_back({e, p(i)});
  }
  return make_polyhedron(r, {}, eqs);
}

Polyhedron make_polyhedron(int r, const std::vector<Constraint>& ineqs,
                           const std::vector<Constraint>& eqs) {
  Polyhedron p;
  p.ambient_rank = r;
  p.inequalities = ineqs;
  p.equalities = eqs;
  return canonical(p);
}

Polyhedron canonical(const Polyhedron& P) {
  if (P.is_canonical) return P;
  const int r = P.ambient_rank;

  std::vector<Constraint> ineqs, eqs;
  for (const auto& c : P.inequalities) {
    if (c.a.isZero()) {
      if (c.b > 0) return empty_polyhedron(r);
      continue;
    }
    ineqs.push_back(c);
  }
  for (const auto& c : P.equalities) {
    if (c.a.isZero()) {
      if (c.b != 0) return empty_polyhedron(r);
      continue;
    }
    eqs.push_back(c);
  }

  const Analysis an = analyze(r, ineqs, eqs);
  if (an.empty) return empty_polyhedron(r);

  // equalities: explicit ones plus implicit inequalities, in reduced row echelon form
  std::vector<Constraint> all_eqs = eqs;
  for (std::size_t i = 0; i < ineqs.size(); ++i)
    if (an.implicit[i]) all_eqs.push_back(ineqs[i]);
  RatMatrix aug(all_eqs.size(), r + 1);
  for (std::size_t i = 0; i < all_eqs.size(); ++i) {
    aug.row(i).head(r) = all_eqs[i].a.transpose();
    aug(i, r) = all_eqs[i].b;
  }
  const RowEchelon ech = row_echelon(aug);
  Polyhedron out;
  out.ambient_rank = r;
  out.is_canonical = true;
  std::vector<RatVector> rref_rows;
  for (Eigen::Index i = 0; i < ech.reduced.rows(); ++i) {
    const RatVector row = ech.reduced.row(i).transpose();
    rref_rows.push_back(row);
    IntVector prim;
    const Rational scale = clear_denominators(RatVector(row.head(r)), prim);
    out.equalities.push_back({to_rational(prim), row(r) * scale});
  }

  // inequalities reduced modulo the equations, primitive, deduplicated
  std::vector<Constraint> red;
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    if (an.implicit[i]) continue;
    RatVector a = ineqs[i].a;
    Rational b = ineqs[i].b;
    for (std::size_t k = 0; k < rref_rows.size(); ++k) {
      const int p = ech.pivots[k];
      if (a(p) == 0) continue;
      const Rational f = a(p);
      a -= f * rref_rows[k].head(r);
      b -= f * rref_rows[k](r);
    }
    if (a.isZero()) continue;
    IntVector prim;
    const Rational scale = clear_denominators(a, prim);
    red.push_back({to_rational(prim), b * scale});
  }
  std::sort(red.begin(), red.end(), [](const Constraint& x, const Constraint& y) {
    if (int c = lex_compare(x.a, y.a)) return c < 0;
    return y.b < x.b;  // tightest first
  });
  std::vector<Constraint> uniq;
  for (const auto& c : red)
    if (uniq.empty() || lex_compare(uniq.back().a, c.a) != 0) uniq.push_back(c);

  // redundancy removal
  std::vector<bool> keep(uniq.size(), true);
  const System eqsys = assemble(r, {}, out.equalities);
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    std::vector<Constraint> others;
    for (std::size_t j = 0; j < uniq.size(); ++j)
      if (j != i && keep[j]) others.push_back(uniq[j]);
    const System s = assemble(r, others, {});
    const auto res = lp_solve(uniq[i].a, s.A, s.b, eqsys.E, eqsys.f, Sense::Min);
    if (res.status == LpStatus::Optimal && res.value >= uniq[i].b) keep[i] = false;
  }
  for (std::size_t i = 0; i < uniq.size(); ++i)
    if (keep[i]) out.inequalities.push_back(uniq[i]);

  out.dim = r - static_cast<int>(out.equalities.size());
  out.relint = an.relint;
  RatMatrix E(out.equalities.size(), r);
  for (std::size_t i = 0; i < out.equalities.size(); ++i) E.row(i) = out.equalities[i].a.transpose();
  out.directions = E.rows() ? nullspace(E) : RatMatrix(RatMatrix::Identity(r, r));
  return out;
}

bool is_empty(const Polyhedron& P) { return canonical(P).dim < 0; }
int dimension(const Polyhedron& P) { return canonical(P).dim; }

LpResult lp_optimize(const RatVector& objective, const Polyhedron& P, Sense sense) {
  const System s = assemble(P.ambient_rank, P.inequalities, P.equalities);
  if (P.is_canonical && P.dim < 0) return {};
  return lp_solve(objective, s.A, s.b, s.E, s.f, sense);
}

bool contains(const Polyhedron& P, const RatVector& x) {
  if (P.is_canonical && P.dim < 0) return false;
  for (const auto& c : P.equalities)
    if (dot(c.a, x) != c.b) return false;
  for (const auto& c : P.inequalities)
    if (dot(c.a, x) < c.b) return false;
  if (!P.is_canonical) return !is_empty(P);
  return true;
}

bool in_relative_interior(const Polyhedron& P, const RatVector& x) {
  const Polyhedron C = canonical(P);
  if (C.dim < 0) return false;
  for (const auto& c : C.equalities)
    if (dot(c.a, x) != c.b) return false;
  for (const auto& c : C.inequalities)
    if (dot(c.a, x) <= c.b) return false;
  return true;
}

Polyhedron intersect(const Polyhedron& P, const Polyhedron& Q) {
  if ((P.is_canonical && P.dim < 0) || (Q.is_canonical && Q.dim < 0))
    return empty_polyhedron(P.ambient_rank);
  Polyhedron R;
  R.ambient_rank = P.ambient_rank;
  R.inequalities = P.inequalities;
  R.inequalities.insert(R.inequalities.end(), Q.inequalities.begin(), Q.inequalities.end());
  R.equalities = P.equalities;
  R.equalities.insert(R.equalities.end(), Q.equalities.begin(), Q.equalities.end());
  return canonical(R);
}

bool is_subset(const Polyhedron& P, const Polyhedron& Q) {
  const Polyhedron cp = canonical(P);
  if (cp.dim < 0) return true;
  for (const auto& c : Q.equalities) {
    // a.x constant on aff(P) and equal to b
    if (dot(c.a, cp.relint) != c.b) return false;
    if (!(c.a.transpose() * cp.directions).isZero()) return false;
  }
  for (const auto& c : Q.inequalities) {
    const auto res = lp_optimize(c.a, cp, Sense::Min);
    if (res.status != LpStatus::Optimal || res.value < c.b) return false;
  }
  return true;
}

bool is_face(const Polyhedron& F, const Polyhedron& P) {
  const Polyhedron cf = canonical(F), cp = canonical(P);
  if (cf.dim < 0) return true;
  if (!contains(cp, cf.relint) || !is_subset(cf, cp)) return false;
  Polyhedron T;
  T.ambient_rank = cp.ambient_rank;
  T.equalities = cp.equalities;
  for (const auto& c : cp.inequalities) {
    if (dot(c.a, cf.relint) == c.b) T.equalities.push_back(c);
    else T.inequalities.push_back(c);
  }
  return canonical(T) == cf;
}

bool is_bounded(const Polyhedron& P) {
  const Polyhedron cp = canonical(P);
  if (cp.dim <= 0) return true;
  Polyhedron rec;
  rec.ambient_rank = cp.ambient_rank;
  for (const auto& c : cp.inequalities) rec.inequalities.push_back({c.a, 0});
  for (const auto& c : cp.equalities) rec.equalities.push_back({c.a, 0});
  return canonical(rec).dim == 0;
}

std::vector<Polyhedron> facets(const Polyhedron& P) {
  const Polyhedron cp = canonical(P);
  std::vector<Polyhedron> out;
  if (cp.dim <= 0) return out;
  for (std::size_t i = 0; i < cp.inequalities.size(); ++i) {
    Polyhedron F;
    F.ambient_rank = cp.ambient_rank;
    F.equalities = cp.equalities;
    F.equalities.push_back(cp.inequalities[i]);
    for (std::size_t j = 0; j < cp.inequalities.size(); ++j)
      if (j != i) F.inequalities.push_back(cp.inequalities[j]);
    out.push_back(canonical(F));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Polyhedron> faces(const Polyhedron& P, int codim) {
  std::vector<Polyhedron> level{canonical(P)};
  if (level[0].dim < 0) return {};
  for (int k = 0; k < codim; ++k) {
    std::set<Polyhedron> next;
    for (const auto& Q : level)
      for (auto& F : facets(Q)) next.insert(std::move(F));
    level.assign(next.begin(), next.end());
  }
  return level;
}

std::vector<RatVector> vertices(const Polyhedron& P) {
  const Polyhedron cp = canonical(P);
  std::vector<RatVector> out;
  if (cp.dim < 0) return out;
  for (const auto& v : faces(cp, cp.dim))
    if (v.dim == 0) out.push_back(v.relint);
  return out;
}

Polyhedron local_cone(const Polyhedron& P, const RatVector& omega) {
  const Polyhedron cp = canonical(P);
  if (!contains(cp, omega)) throw Error(ErrorCode::NotMember, "point " + to_string(omega) + " not in polyhedron");
  Polyhedron L;
  L.ambient_rank = cp.ambient_rank;
  for (const auto& c : cp.equalities) L.equalities.push_back({c.a, 0});
  for (const auto& c : cp.inequalities)
    if (dot(c.a, omega) == c.b) L.inequalities.push_back({c.a, 0});
  return canonical(L);
}

bool displaced_meets(const Polyhedron& P, const Polyhedron& Q, const RatVector& v) {
  const int r = P.ambient_rank;
  const int n = 2 * r + 1;
  std::vector<Constraint> in, eq;
  auto embed = [&](const RatVector& a, int offset) {
    RatVector x = RatVector::Zero(n);
    x.segment(offset, r) = a;
    return x;
  };
  for (const auto& c : P.inequalities) in.push_back({embed(c.a, 0), c.b});
  for (const auto& c : P.equalities) eq.push_back({embed(c.a, 0), c.b});
  for (const auto& c : Q.inequalities) in.push_back({embed(c.a, r), c.b});
  for (const auto& c : Q.equalities) eq.push_back({embed(c.a, r), c.b});
  RatVector eps = RatVector::Zero(n);
  eps(2 * r) = 1;
  in.push_back({eps, 0});
  for (int i = 0; i < r; ++i) {
    RatVector row = RatVector::Zero(n);
    row(i) = 1;
    row(r + i) = -1;
    row(2 * r) = -v(i);
    eq.push_back({row, 0});
  }
  const System s = assemble(n, in, eq);
  const auto lo = lp_solve(eps, s.A, s.b, s.E, s.f, Sense::Min);
  if (lo.status != LpStatus::Optimal || lo.value != 0) return false;
  const auto hi = lp_solve(eps, s.A, s.b, s.E, s.f, Sense::Max);
  return hi.status == LpStatus::Unbounded || hi.value > 0;
}

Sublattice lattice_of(const Polyhedron& P) {
  const Polyhedron cp = canonical(P);
  if (cp.dim <= 0) return {cp.ambient_rank, IntMatrix(cp.ambient_rank, 0)};
  return saturation(cp.directions);
}

IntVector primitive_normal(const Polyhedron& sigma, const Polyhedron& tau) {
  const Polyhedron cs = canonical(sigma), ct = canonical(tau);
  if (ct.dim != cs.dim - 1 || !is_face(ct, cs))
    throw Error(ErrorCode::NotAFacet, "not a codimension-one face");
  return primitive_normal(lattice_of(cs), lattice_of(ct), RatVector(cs.relint - ct.relint));
}

Polyhedron affine_image(const IntegralAffineMap& F, const Polyhedron& P) {
  const Polyhedron cp = canonical(P);
  const int m = F.target_rank();
  if (cp.dim < 0) return empty_polyhedron(m);
  const RatMatrix A = to_rational(F.linear);
  const RatMatrix M = A * cp.directions;
  if (rank(M) != cp.dim) throw std::invalid_argument("affine_image: map not injective on the cell");
  const RatVector q = F.apply(cp.relint);
  Polyhedron out;
  out.ambient_rank = m;
  if (cp.dim == 0) return Polyhedron::point(q);
  const RatMatrix G = left_inverse(M);
  const RatMatrix ann = nullspace(M.transpose());
  for (Eigen::Index j = 0; j < ann.cols(); ++j) out.equalities.push_back({ann.col(j), ann.col(j).dot(q)});
  const RatMatrix BG = cp.directions * G;  // x = p + BG (y - q)
  for (const auto& c : cp.inequalities) {
    const RatVector a = BG.transpose() * c.a;
    out.inequalities.push_back({a, c.b - c.a.dot(cp.relint) + a.dot(q)});
  }
  return canonical(out);
}

Polyhedron affine_preimage(const IntegralAffineMap& F, const Polyhedron& P) {
  const RatMatrix A = to_rational(F.linear);
  Polyhedron out;
  out.ambient_rank = F.source_rank();
  if (P.is_canonical && P.dim < 0) return empty_polyhedron(out.ambient_rank);
  for (const auto& c : P.inequalities)
    out.inequalities.push_back({A.transpose() * c.a, c.b - c.a.dot(F.translation)});
  for (const auto& c : P.equalities)
    out.equalities.push_back({A.transpose() * c.a, c.b - c.a.dot(F.translation)});
  return canonical(out);
}

int compare(const Polyhedron& P, const Polyhedron& Q) {
  if (!P.is_canonical || !Q.is_canonical) return compare(canonical(P), canonical(Q));
  if (P.ambient_rank != Q.ambient_rank) return P.ambient_rank < Q.ambient_rank ? -1 : 1;
  if (P.dim != Q.dim) return P.dim < Q.dim ? -1 : 1;
  if (P.dim < 0) return 0;
  if (P.equalities.size() != Q.equalities.size())
    return P.equalities.size() < Q.equalities.size() ? -1 : 1;
  for (std::size_t i = 0; i < P.equalities.size(); ++i)
    if (int c = compare_constraint(P.equalities[i], Q.equalities[i])) return c;
  if (P.inequalities.size() != Q.inequalities.size())
    return P.inequalities.size() < Q.inequalities.size() ? -1 : 1;
  for (std::size_t i = 0; i < P.inequalities.size(); ++i)
    if (int c = compare_constraint(P.inequalities[i], Q.inequalities[i])) return c;
  return 0;
}

Polynomial restrict_to_hull(const Polynomial& f, const Polyhedron& P) {
  const Polyhedron cp = canonical(P);
  const int r = cp.ambient_rank;
  if (cp.dim < 0 || cp.equalities.empty()) return f;
  std::vector<Polynomial> subs;
  for (int i = 0; i < r; ++i) subs.push_back(Polynomial::variable(r, i));
  for (const auto& c : cp.equalities) {
    int p = 0;
    while (c.a(p) == 0) ++p;
    RatVector a = -c.a / c.a(p);
    a(p) = 0;
    subs[p] = Polynomial::affine(a, c.b / c.a(p));
  }
  return f.substitute(subs);
}

std::string to_string(const Polyhedron& P) {
  const Polyhedron cp = canonical(P);
  if (cp.dim < 0) return "{empty}";
  std::string s = "{";
  bool first = true;
  auto term = [&](const Constraint& c, const char* op) {
    if (!first) s += ", ";
    first = false;
    s += to_string(c.a) + ".x " + op + " " + (is_integer(c.b) ? numer(c.b).str() : to_string(c.b));
  };
  for (const auto& c : cp.equalities) term(c, "=");
  for (const auto& c : cp.inequalities) term(c, ">=");
  return s + "}";
}

}  // namespace tropo
