#pragma once

#include <optional>
#include <vector>

#include "conekit/matrix.hpp"

namespace conekit {

enum class LpSense { Minimize, Maximize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

// Closed interval bound for one variable; a missing side is unbounded.
struct LpBound {
  std::optional<Rat> lo, hi;
  static LpBound nonneg() { return {Rat(0), std::nullopt}; }
  static LpBound free() { return {std::nullopt, std::nullopt}; }
  static LpBound interval(Rat l, Rat h) { return {std::move(l), std::move(h)}; }
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  // Valid only when Optimal. x is a basic solution: the number of components
  // strictly inside their bound interval is at most the number of equality
  // rows.
  RatVec x;
  Rat value{0};
  // Simplex multipliers for the equality rows (one per row of A), in the
  // caller's sense: for Maximize problems, value-increasing convention.
  // Exposed because the cutting-plane solver reads the primal answer of a
  // problem it poses in dual form; callers should verify feasibility of
  // whatever they derive from these (degenerate optima admit several valid
  // multiplier vectors).
  RatVec row_duals;
};

// Exact two-phase primal simplex with Bland's rule (finite termination).
// Solves: optimize c^T x subject to A x = b and bounds[j].lo <= x_j <=
// bounds[j].hi. All data rational; the returned point and value are exact.
LpResult lp_solve(const RatMat& A, const RatVec& b, const std::vector<LpBound>& bounds,
                  const RatVec& c, LpSense sense);

}  // namespace conekit
