#include "tropo/lp.hpp"

#include "tropo/linalg.hpp"

#include <vector>

namespace tropo {

namespace {

// Tableau rows: constraint rows followed by one objective row (reduced costs, minimization).
// Last column is the right-hand side. basis[i] is the basic column of row i.
struct Tableau {
  std::vector<std::vector<Rational>> t;
  std::vector<int> basis;
  int cols = 0;  // number of variable columns

  int rows() const { return static_cast<int>(basis.size()); }
  std::vector<Rational>& obj() { return t.back(); }

  void pivot(int r, int c) {
    auto& pr = t[r];
    const Rational inv = 1 / pr[c];
    for (auto& x : pr)
      if (x != 0) x *= inv;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (static_cast<int>(i) == r) continue;
      auto& row = t[i];
      if (row[c] == 0) continue;
      const Rational f = row[c];
      for (int j = 0; j <= cols; ++j)
        if (pr[j] != 0) row[j] -= f * pr[j];
    }
    basis[r] = c;
  }

  // Minimizes the objective row over columns allowed[j]; returns false when unbounded.
  bool run(const std::vector<bool>& allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols; ++j)
        if (allowed[j] && obj()[j] < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < rows(); ++i) {
        if (t[i][enter] <= 0) continue;
        const Rational ratio = t[i][cols] / t[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "OPTIMAL";
    case LpStatus::Unbounded: return "UNBOUNDED";
    case LpStatus::Infeasible: return "INFEASIBLE";
  }
  return "?";
}

LpResult lp_solve(const RatVector& c, const RatMatrix& A, const RatVector& b, const RatMatrix& E,
                  const RatVector& f, Sense sense) {
  const Eigen::Index n = c.size();
  LpResult res;

  // eliminate equalities: x = x0 + K z
  RatVector x0 = RatVector::Zero(n);
  RatMatrix K;
  if (E.rows() > 0) {
    auto sol = solve(E, f);
    if (!sol) return res;
    x0 = *sol;
    K = nullspace(E);
  } else {
    K = RatMatrix::Identity(n, n);
  }
  const Eigen::Index k = K.cols();
  const Eigen::Index m = A.rows();
  RatMatrix G = m ? RatMatrix(A * K) : RatMatrix(0, k);
  RatVector h = m ? RatVector(b - A * x0) : RatVector(0);
  RatVector cz = K.transpose() * c;
  if (sense == Sense::Max) cz = -cz;

  // drop structurally empty rows
  std::vector<Eigen::Index> live;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (G.row(i).isZero()) {
      if (h(i) > 0) return res;
      continue;
    }
    live.push_back(i);
  }

  // columns: z+ (k), z- (k), slack (live), artificial (as needed)
  const int nl = static_cast<int>(live.size());
  std::vector<int> needs_art;
  for (int i = 0; i < nl; ++i)
    if (h(live[i]) > 0) needs_art.push_back(i);
  const int nart = static_cast<int>(needs_art.size());
  const int cols = static_cast<int>(2 * k) + nl + nart;

  Tableau tab;
  tab.cols = cols;
  tab.t.assign(nl + 1, std::vector<Rational>(cols + 1));
  tab.basis.assign(nl, -1);
  int art = static_cast<int>(2 * k) + nl;
  for (int i = 0; i < nl; ++i) {
    const Eigen::Index r = live[i];
    auto& row = tab.t[i];
    const bool negate = h(r) <= 0;  // slack can start basic
    const Rational s = negate ? Rational(-1) : Rational(1);
    for (Eigen::Index j = 0; j < k; ++j) {
      row[j] = s * G(r, j);
      row[k + j] = -s * G(r, j);
    }
    row[2 * k + i] = -s;
    row[cols] = s * h(r);
    if (negate) {
      tab.basis[i] = static_cast<int>(2 * k) + i;
    } else {
      row[art] = 1;
      tab.basis[i] = art++;
    }
  }

  std::vector<bool> allowed(cols, true);
  if (nart > 0) {
    // phase 1: minimize the sum of artificials
    auto& o = tab.obj();
    for (int j = 0; j <= cols; ++j) o[j] = 0;
    for (int i : needs_art)
      for (int j = 0; j <= cols; ++j)
        if (j < static_cast<int>(2 * k) + nl || j == cols) o[j] -= tab.t[i][j];
    tab.run(allowed);
    if (tab.obj()[cols] != 0) return res;  // optimum -(sum) < 0
    // drive artificials out of the basis
    const int first_art = static_cast<int>(2 * k) + nl;
    for (int i = 0; i < tab.rows(); ++i) {
      if (tab.basis[i] < first_art) continue;
      int c2 = -1;
      for (int j = 0; j < first_art; ++j)
        if (tab.t[i][j] != 0) {
          c2 = j;
          break;
        }
      if (c2 >= 0) tab.pivot(i, c2);
    }
    for (int j = first_art; j < cols; ++j) allowed[j] = false;
    // redundant rows keep an artificial basic at level zero; they never change
  }

  // phase 2
  {
    auto& o = tab.obj();
    for (int j = 0; j <= cols; ++j) o[j] = 0;
    for (Eigen::Index j = 0; j < k; ++j) {
      o[j] = cz(j);
      o[k + j] = -cz(j);
    }
    for (int i = 0; i < tab.rows(); ++i) {
      const int bc = tab.basis[i];
      if (o[bc] == 0) continue;
      const Rational fct = o[bc];
      for (int j = 0; j <= cols; ++j)
        if (tab.t[i][j] != 0) o[j] -= fct * tab.t[i][j];
    }
  }
  const bool bounded = tab.run(allowed);

  RatVector z = RatVector::Zero(k);
  for (int i = 0; i < tab.rows(); ++i) {
    const int bc = tab.basis[i];
    if (bc < k) z(bc) += tab.t[i][cols];
    else if (bc < 2 * k) z(bc - k) -= tab.t[i][cols];
  }
  res.witness = x0 + K * z;
  if (!bounded) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  res.status = LpStatus::Optimal;
  res.value = c.dot(res.witness);
  return res;
}

}  // namespace tropo
