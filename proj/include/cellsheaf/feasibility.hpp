#pragma once

#include <optional>
#include <vector>

#include "cellsheaf/matrix.hpp"

namespace cellsheaf {

/// Exact phase-one simplex (Bland's rule): some x >= 0 with a*x == b, or nullopt.
std::optional<std::vector<Rational>> find_nonnegative_solution(const Matrix& a, const std::vector<Rational>& b);

/// Some y with rows(a)*y >= 1 componentwise (y unrestricted in sign), or nullopt.
/// Strict homogeneous systems a*y > 0 are feasible exactly when this one is.
std::optional<std::vector<Rational>> find_strict_solution(const Matrix& a);

}  // namespace cellsheaf
