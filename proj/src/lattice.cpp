#include "tropo/lattice.hpp"

#include "tropo/error.hpp"
#include "tropo/linalg.hpp"

#include <algorithm>

namespace tropo {

namespace {

struct ExtGcd {
  Integer g, s, t;  // s*a + t*b = g >= 0
};

ExtGcd ext_gcd(const Integer& a, const Integer& b) {
  // keep the first operand when it already divides the second
  if (a != 0 && b % a == 0) return a > 0 ? ExtGcd{a, 1, 0} : ExtGcd{-a, -1, 0};
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// rows i, j <- [s t; -b/g a/g] applied to (row i, row j)
void combine_rows(IntMatrix& m, Eigen::Index i, Eigen::Index j, const Integer& s, const Integer& t,
                  const Integer& u, const Integer& v) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const Integer x = m(i, c), y = m(j, c);
    m(i, c) = s * x + t * y;
    m(j, c) = u * x + v * y;
  }
}

void combine_cols(IntMatrix& m, Eigen::Index i, Eigen::Index j, const Integer& s, const Integer& t,
                  const Integer& u, const Integer& v) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const Integer x = m(r, i), y = m(r, j);
    m(r, i) = s * x + t * y;
    m(r, j) = u * x + v * y;
  }
}

IntMatrix identity(Eigen::Index n) {
  IntMatrix m = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

}  // namespace

Sublattice Sublattice::full(int r) { return {r, identity(r)}; }

HermiteForm hermite_normal_form(const IntMatrix& A) {
  IntMatrix H = A;
  IntMatrix U = identity(A.rows());
  const Eigen::Index m = H.rows(), n = H.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < n && r < m; ++c) {
    for (Eigen::Index i = r + 1; i < m; ++i) {
      if (H(i, c) == 0) continue;
      const Integer a = H(r, c), b = H(i, c);
      const auto e = ext_gcd(a, b);
      const Integer u = -b / e.g, v = a / e.g;
      combine_rows(H, r, i, e.s, e.t, u, v);
      combine_rows(U, r, i, e.s, e.t, u, v);
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0) {
      H.row(r) = -H.row(r);
      U.row(r) = -U.row(r);
    }
    for (Eigen::Index i = 0; i < r; ++i) {
      const Integer q = floor_div(H(i, c), H(r, c));
      if (q == 0) continue;
      H.row(i) -= q * H.row(r);
      U.row(i) -= q * U.row(r);
    }
    ++r;
  }
  return {H, U};
}

SmithForm smith_normal_form(const IntMatrix& A) {
  IntMatrix S = A;
  IntMatrix U = identity(A.rows());
  IntMatrix V = identity(A.cols());
  const Eigen::Index m = S.rows(), n = S.cols();
  for (Eigen::Index t = 0; t < std::min(m, n); ++t) {
    // smallest nonzero entry of the trailing block as pivot
    Eigen::Index pi = -1, pj = -1;
    for (Eigen::Index i = t; i < m; ++i)
      for (Eigen::Index j = t; j < n; ++j)
        if (S(i, j) != 0 && (pi < 0 || abs(S(i, j)) < abs(S(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    if (pi != t) {
      S.row(pi).swap(S.row(t));
      U.row(pi).swap(U.row(t));
    }
    if (pj != t) {
      S.col(pj).swap(S.col(t));
      V.col(pj).swap(V.col(t));
    }
    for (;;) {
      bool changed = false;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        const Integer a = S(t, t), b = S(i, t);
        const auto e = ext_gcd(a, b);
        combine_rows(S, t, i, e.s, e.t, -b / e.g, a / e.g);
        combine_rows(U, t, i, e.s, e.t, -b / e.g, a / e.g);
        changed = true;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        const Integer a = S(t, t), b = S(t, j);
        const auto e = ext_gcd(a, b);
        combine_cols(S, t, j, e.s, e.t, -b / e.g, a / e.g);
        combine_cols(V, t, j, e.s, e.t, -b / e.g, a / e.g);
        changed = true;
      }
      if (changed) continue;
      // divisibility of the trailing block
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      S.row(t) += S.row(bad);
      U.row(t) += U.row(bad);
    }
    if (S(t, t) < 0) {
      S.row(t) = -S.row(t);
      U.row(t) = -U.row(t);
    }
  }
  return {S, U, V};
}

std::vector<Integer> elementary_divisors(const IntMatrix& A) {
  const auto snf = smith_normal_form(A);
  std::vector<Integer> d;
  for (Eigen::Index i = 0; i < std::min(A.rows(), A.cols()); ++i)
    if (snf.S(i, i) != 0) d.push_back(snf.S(i, i));
  return d;
}

Sublattice saturated_kernel(const IntMatrix& A) {
  const Eigen::Index n = A.cols();
  const IntMatrix At = A.transpose();
  const auto h = hermite_normal_form(At);
  std::vector<Eigen::Index> zero_rows;
  for (Eigen::Index i = 0; i < h.H.rows(); ++i)
    if (h.H.row(i).isZero()) zero_rows.push_back(i);
  IntMatrix k(zero_rows.size(), n);
  for (std::size_t i = 0; i < zero_rows.size(); ++i) k.row(i) = h.U.row(zero_rows[i]);
  return lattice_span(static_cast<int>(n), k.transpose());
}

Sublattice lattice_span(int ambient_rank, const IntMatrix& gens) {
  const IntMatrix gt = gens.transpose();
  const auto h = hermite_normal_form(gt);
  Eigen::Index k = 0;
  while (k < h.H.rows() && !h.H.row(k).isZero()) ++k;
  return {ambient_rank, h.H.topRows(k).transpose()};
}

Sublattice saturation(int ambient_rank, const IntMatrix& gens) {
  if (gens.cols() == 0) return {ambient_rank, IntMatrix(ambient_rank, 0)};
  const Sublattice ann = saturated_kernel(gens.transpose());
  return saturated_kernel(ann.basis.transpose());
}

Sublattice saturation(const RatMatrix& directions) {
  IntMatrix gens(directions.rows(), directions.cols());
  for (Eigen::Index j = 0; j < directions.cols(); ++j) gens.col(j) = primitive(directions.col(j));
  return saturation(static_cast<int>(directions.rows()), gens);
}

Sublattice sum(const Sublattice& a, const Sublattice& b) {
  return lattice_span(a.ambient_rank, hstack(a.basis, b.basis));
}

Sublattice intersect(const Sublattice& a, const Sublattice& b) {
  const IntMatrix m = hstack(a.basis, IntMatrix(-b.basis));
  const Sublattice k = saturated_kernel(m);
  const IntMatrix x = k.basis.topRows(a.basis.cols());
  return lattice_span(a.ambient_rank, a.basis * x);
}

Sublattice image(const IntMatrix& F, const Sublattice& P) {
  return lattice_span(static_cast<int>(F.rows()), F * P.basis);
}

Sublattice preimage(const IntMatrix& F, const Sublattice& Q) {
  const IntMatrix m = hstack(F, IntMatrix(-Q.basis));
  const Sublattice k = saturated_kernel(m);
  return lattice_span(static_cast<int>(F.cols()), k.basis.topRows(F.cols()));
}

bool contains(const Sublattice& lattice, const IntVector& v) {
  auto x = solve(to_rational(lattice.basis), to_rational(v));
  if (!x) return false;
  for (Eigen::Index i = 0; i < x->size(); ++i)
    if (!is_integer((*x)(i))) return false;
  return true;
}

LatticeIndex lattice_index(int ambient_rank, const IntMatrix& gens_a, const IntMatrix& gens_b) {
  const IntMatrix g = hstack(gens_a, gens_b);
  const auto d = elementary_divisors(g);
  if (static_cast<int>(d.size()) < ambient_rank) return std::nullopt;
  Integer p = 1;
  for (const auto& x : d) p *= x;
  return p;
}

LatticeIndex index_in(const Sublattice& super, const Sublattice& sub) {
  if (super.rank() != sub.rank()) return std::nullopt;
  if (super.rank() == 0) return Integer(1);
  RatMatrix coords(super.rank(), sub.rank());
  const RatMatrix sb = to_rational(super.basis);
  for (int j = 0; j < sub.rank(); ++j) {
    auto x = solve(sb, to_rational(IntVector(sub.basis.col(j))));
    if (!x) throw std::logic_error("index_in: not a sublattice");
    coords.col(j) = *x;
  }
  const auto d = elementary_divisors(to_integer(coords));
  if (static_cast<int>(d.size()) < sub.rank()) return std::nullopt;
  Integer p = 1;
  for (const auto& x : d) p *= x;
  return p;
}

IntVector primitive_normal(const Sublattice& n_sigma, const Sublattice& n_tau,
                           const RatVector& inward) {
  const int k = n_sigma.rank();
  if (n_tau.rank() != k - 1)
    throw Error(ErrorCode::NotAFacet, "lattice ranks differ by " + std::to_string(k - n_tau.rank()));
  const RatMatrix bs = to_rational(n_sigma.basis);
  RatMatrix coords(k, k - 1);
  for (int j = 0; j < k - 1; ++j) {
    auto x = solve(bs, to_rational(IntVector(n_tau.basis.col(j))));
    if (!x) throw std::logic_error("primitive_normal: N_tau not inside N_sigma");
    coords.col(j) = *x;
  }
  // y: primitive functional on N_sigma vanishing on N_tau
  const Sublattice ann = saturated_kernel(to_integer(RatMatrix(coords.transpose())));
  const IntVector y = ann.basis.col(0);
  const auto h = hermite_normal_form(IntMatrix(y));
  IntVector z = h.U.row(0).transpose();  // y . z = 1
  auto d = solve(bs, inward);
  if (!d) throw std::logic_error("primitive_normal: inward direction not in L_sigma");
  Rational s = 0;
  for (int i = 0; i < k; ++i) s += Rational(y(i)) * (*d)(i);
  if (s == 0) throw std::logic_error("primitive_normal: inward direction lies in L_tau");
  if (s < 0) z = -z;
  IntVector w = n_sigma.basis * z;

  // reduce against the HNF basis of N_tau
  const auto ht = hermite_normal_form(IntMatrix(n_tau.basis.transpose()));
  const IntMatrix rows = ht.H.topRows(k - 1);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    Eigen::Index p = 0;
    while (rows(i, p) == 0) ++p;
    const Integer q = floor_div(w(p), rows(i, p));
    if (q != 0) w -= q * IntVector(rows.row(i).transpose());
  }
  // least L1 norm among the reduced vector and its neighbours in {-1,0,1}^{k-1}
  auto l1 = [](const IntVector& v) {
    Integer s = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) s += abs(v(i));
    return s;
  };
  IntVector best = w;
  Integer best_norm = l1(w);
  std::vector<int> c(k - 1, -1);
  const int total = [&] {
    int t = 1;
    for (int i = 0; i < k - 1; ++i) t *= 3;
    return t;
  }();
  for (int code = 0; code < total; ++code) {
    int x = code;
    IntVector cand = w;
    for (int i = 0; i < k - 1; ++i) {
      const int ci = x % 3 - 1;
      x /= 3;
      if (ci) cand += Integer(ci) * IntVector(rows.row(i).transpose());
    }
    const Integer nrm = l1(cand);
    if (nrm < best_norm || (nrm == best_norm && lex_compare(cand, best) < 0)) {
      best = cand;
      best_norm = nrm;
    }
  }
  return best;
}

RatVector IntegralAffineMap::apply(const RatVector& x) const {
  return to_rational(linear) * x + translation;
}

IntegralAffineMap IntegralAffineMap::compose(const IntegralAffineMap& inner) const {
  return {IntMatrix(linear * inner.linear), RatVector(to_rational(linear) * inner.translation + translation)};
}

IntegralAffineMap IntegralAffineMap::identity(int r) {
  return {tropo::identity(r), RatVector::Zero(r)};
}

ProjectionIdentity lattice_projection_identity(const IntMatrix& F, const Sublattice& P,
                                               const Sublattice& Q) {
  const int m = static_cast<int>(F.rows());
  const int n = static_cast<int>(F.cols());
  const Sublattice N = Sublattice::full(m);
  const Sublattice Nprime = Sublattice::full(n);
  const Sublattice FN = image(F, Nprime);
  const Sublattice FP = image(F, P);
  if (FN.rank() != m || sum(FP, Q).rank() != m)
    throw Error(ErrorCode::PreconditionViolated, "rank hypotheses rk F(N') = rk N = rk(F(P')+Q) fail");
  const Sublattice fp_sat = saturation(m, FP.basis);
  const Sublattice finv_q = preimage(F, Q);

  auto idx = [](const Sublattice& a, const Sublattice& b) {
    auto i = index_in(a, b);
    if (!i) throw Error(ErrorCode::PreconditionViolated, "infinite lattice index");
    return *i;
  };
  const Integer l1 = idx(intersect(fp_sat, Q), image(F, intersect(P, finv_q)));
  const Integer l2 = idx(Nprime, sum(P, finv_q));
  const Integer l3 = idx(N, sum(FN, Q));
  const Integer r1 = idx(N, sum(fp_sat, Q));
  const Integer r2 = idx(fp_sat, FP);
  return {l1 * l2 * l3, r1 * r2};
}

}  // namespace tropo
