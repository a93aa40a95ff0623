#pragma once

#include "tropo/scalar.hpp"

#include <optional>
#include <vector>

namespace tropo {

struct RowEchelon {
  RatMatrix reduced;          // reduced row echelon form, zero rows dropped
  std::vector<int> pivots;    // pivot column of each row
};

RowEchelon row_echelon(const RatMatrix& m);
int rank(const RatMatrix& m);
int rank(const IntMatrix& m);

/// Columns form a basis of {x : m x = 0}.
RatMatrix nullspace(const RatMatrix& m);
/// Columns form a basis of the column span of m.
RatMatrix column_basis(const RatMatrix& m);
/// Some x with m x = b, if one exists.
std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b);
/// G with G m = I for m of full column rank.
RatMatrix left_inverse(const RatMatrix& m);
/// Inverse of a square invertible matrix.
RatMatrix inverse(const RatMatrix& m);
Rational determinant(const RatMatrix& m);
Integer determinant(const IntMatrix& m);

/// Does v lie in the column span of m?
bool in_column_span(const RatMatrix& m, const RatVector& v);

RatMatrix hstack(const RatMatrix& a, const RatMatrix& b);
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
RatMatrix vstack(const RatMatrix& a, const RatMatrix& b);

}  // namespace tropo
