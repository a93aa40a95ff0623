#pragma once

#include "tropo/scalar.hpp"

namespace tropo {

enum class LpStatus { Optimal, Unbounded, Infeasible };
enum class Sense { Min, Max };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  RatVector witness;
};

/// Optimizes c . x over {x : A x >= b, E x = f} with x free, by a two-phase
/// tableau simplex in exact arithmetic using Bland's rule.
LpResult lp_solve(const RatVector& c, const RatMatrix& A, const RatVector& b, const RatMatrix& E,
                  const RatVector& f, Sense sense);

const char* to_string(LpStatus s);

}  // namespace tropo
