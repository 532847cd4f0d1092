#pragma once

#include <optional>
#include <vector>

#include "conekit/matrix.hpp"

namespace conekit {

// Exact Gaussian elimination helpers on rational matrices. All routines are
// deterministic: pivoting always takes the first nonzero candidate.

// Solve A x = b for square A. nullopt when A is singular.
std::optional<RatVec> solve_linear(const RatMat& A, const RatVec& b);

// Reduced row echelon form in place; returns pivot column indices.
// Operates on an augmented matrix as given (caller controls which columns
// are eligible as pivots via `pivot_cols_limit`: columns >= limit are
// carried along but never pivoted on).
std::vector<int> rref(RatMat& m, int pivot_cols_limit = -1);

int rank(RatMat m);

// Basis of the right null space {x : A x = 0}.
std::vector<RatVec> nullspace(const RatMat& A);

// Scale a rational vector to a primitive integer vector (clears denominators,
// divides by the gcd). Zero vectors are returned unchanged. When
// `fix_sign` is true the first nonzero entry is made positive (allowed for
// lines, not for rays).
RatVec primitive(const RatVec& v, bool fix_sign);

}  // namespace conekit
