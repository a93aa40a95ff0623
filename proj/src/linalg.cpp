#include "tropo/linalg.hpp"

#include <stdexcept>

namespace tropo {

RowEchelon row_echelon(const RatMatrix& m) {
  RatMatrix a = m;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  std::vector<int> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) a.row(p).swap(a.row(r));
    const Rational inv = 1 / a(r, c);
    for (Eigen::Index j = c; j < cols; ++j) a(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (Eigen::Index j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return {a.topRows(r), pivots};
}

int rank(const RatMatrix& m) { return static_cast<int>(row_echelon(m).pivots.size()); }
int rank(const IntMatrix& m) { return rank(to_rational(m)); }

RatMatrix nullspace(const RatMatrix& m) {
  const auto e = row_echelon(m);
  const Eigen::Index n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (int p : e.pivots) is_pivot[p] = true;
  RatMatrix basis(n, n - static_cast<Eigen::Index>(e.pivots.size()));
  basis.setZero();
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    basis(f, k) = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) basis(e.pivots[i], k) = -e.reduced(i, f);
    ++k;
  }
  return basis;
}

RatMatrix column_basis(const RatMatrix& m) {
  const auto e = row_echelon(m);
  RatMatrix b(m.rows(), static_cast<Eigen::Index>(e.pivots.size()));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) b.col(i) = m.col(e.pivots[i]);
  return b;
}

std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b) {
  RatMatrix aug(m.rows(), m.cols() + 1);
  aug << m, b;
  const auto e = row_echelon(aug);
  RatVector x = RatVector::Zero(m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == m.cols()) return std::nullopt;
    x(e.pivots[i]) = e.reduced(i, m.cols());
  }
  return x;
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  const Eigen::Index n = m.rows();
  RatMatrix aug(n, 2 * n);
  aug << m, RatMatrix::Identity(n, n);
  const auto e = row_echelon(aug);
  if (static_cast<Eigen::Index>(e.pivots.size()) < n || (n > 0 && e.pivots[n - 1] >= n))
    throw std::invalid_argument("inverse: singular matrix");
  return e.reduced.rightCols(n);
}

RatMatrix left_inverse(const RatMatrix& m) {
  const RatMatrix mt = m.transpose();
  return inverse(mt * m) * mt;
}

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  RatMatrix a = m;
  const Eigen::Index n = a.rows();
  Rational det = 1;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.row(p).swap(a.row(c));
      det = -det;
    }
    det *= a(c, c);
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      const Rational f = a(i, c) / a(c, c);
      for (Eigen::Index j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

Integer determinant(const IntMatrix& m) { return numer(determinant(to_rational(m))); }

bool in_column_span(const RatMatrix& m, const RatVector& v) {
  if (m.cols() == 0) return v.isZero();
  return solve(m, v).has_value();
}

RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix r(a.rows(), a.cols() + b.cols());
  if (a.cols()) r.leftCols(a.cols()) = a;
  if (b.cols()) r.rightCols(b.cols()) = b;
  return r;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix r(a.rows(), a.cols() + b.cols());
  if (a.cols()) r.leftCols(a.cols()) = a;
  if (b.cols()) r.rightCols(b.cols()) = b;
  return r;
}

RatMatrix vstack(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix r(a.rows() + b.rows(), a.cols());
  if (a.rows()) r.topRows(a.rows()) = a;
  if (b.rows()) r.bottomRows(b.rows()) = b;
  return r;
}

}  // namespace tropo
