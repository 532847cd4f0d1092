#pragma once

#include <utility>
#include <vector>

#include "conekit/cones.hpp"
#include "conekit/matrix.hpp"
#include "conekit/polytopes.hpp"

namespace conekit {

// A facet-shaped quadratic inequality a'Qa >= kappa over a in {0,1}^n,
// Q symmetric rational, kappa = the exact minimum of the form over the cube.
struct FacetInequality {
  RatMat q{0, 0};  // n x n symmetric
  Rat kappa{0};
};

// Convert one H-rep row over the n(n+1)/2 product coordinates (diagonal
// pairs first, then off-diagonal in row-major order) into quadratic form:
// Q_ii = coeff(z_ii), Q_ij = Q_ji = coeff(z_ij)/2, kappa = rhs.
FacetInequality facet_to_quadratic(const RatVec& coeffs, const Rat& rhs, int n);

// Exact minimum of a'Qa over a in {0,1}^n by enumeration, with the argmin of
// lowest index in the LSB-first counting order (a_i = bit i). n <= 20.
struct KappaResult {
  Rat kappa{0};
  std::vector<int> argmin;
};
KappaResult kappa_min(const RatMat& q);
KappaResult kappa_min_serial(const RatMat& q);
KappaResult kappa_min_parallel(const RatMat& q);

// The exact conic reformulation of min a'Qa over {0,1}^n: minimize the
// block-embedded objective over completely positive Y of side m = 1 + 2n
// subject to 1 + 3n affine constraints pinning Y to lifted cube vertices.
// Constraint order: the scale row (Y_00 = 1), the n pair rows
// (2(Y_0i + Y_0,n+i) = 2), the n complement squares (rhs 1), the n binary
// ties (2 Y_0i - 2 Y_ii = 0).
struct BurerPrimal {
  int n = 0;
  int m = 0;  // 1 + 2n
  std::vector<RatMat> constraint_mats;  // symmetric m x m, one per row
  RatVec constraint_rhs;
  RatMat objective{0, 0};  // Q embedded in the coordinate block
};
BurerPrimal build_primal(const RatMat& q);

// Feasible point of the reformulation at a cube vertex: Y(a) = zz' with
// z = (1; a; 1-a), carried with its rank-one nonnegative certificate.
struct VertexLift {
  RatMat y{0, 0};
  CpCertificate cert;
};
VertexLift vertex_lift(const std::vector<int>& a);

// Dual variables of the reformulation, one per constraint row: alpha for the
// scale row, beta_i / gamma_i / delta_i for the per-coordinate rows. The dual
// objective is alpha + sum_i (2 beta_i + gamma_i); delta carries rhs 0.
struct DualSolution {
  Rat alpha{0};
  RatVec beta, gamma, delta;  // length n each
  Rat objective() const;
};

// Dual slack matrix M = objective - alpha*A_scale - sum_i (beta_i A_pair,i +
// gamma_i A_square,i + delta_i A_tie,i). Dual feasibility is M copositive.
RatMat assemble_dual_matrix(const RatMat& q, const DualSolution& v);

// Strictly feasible dual point: beta = delta = 0, gamma_i = alpha,
// alpha = min(0, 2 lambda_min(Q)) - 1. The assembled M then satisfies
// simplex_min_quadratic(M).value >= -alpha / (2m) > 0.
DualSolution interior_dual_point(const RatMat& q);

// Componentwise bounds that contain a dual optimum whenever B < kappa(Q)
// (callers pass B = kappa - 1):
//   2B <= alpha <= 0
//   (2n-1)B <= 2 beta_i <= -(2n+3)B
//   (4n+2)B <= gamma_i <= 0
//   (4n+2)B - Q_ii <= 2 delta_i <= Q_ii - (8n+2)B.
// Rejects B >= kappa(Q).
struct DualBox {
  Rat alpha_lo{0}, alpha_hi{0};
  RatVec beta_lo, beta_hi;
  RatVec gamma_lo, gamma_hi;
  RatVec delta_lo, delta_hi;
  bool contains(const DualSolution& v) const;
};
DualBox dual_box(const RatMat& q, const Rat& b);

// Cutting-plane solve of the dual restricted to dual_box(Q, kappa-1):
// maximize the dual objective subject to finitely many copositivity cuts
// z'Mz >= 0, separating with the exact simplex minimizer until the
// objective is within tol_obj of kappa(Q) and the final M has simplex
// minimum >= -tol_cop. The LP relaxations are solved exactly in rational
// arithmetic; every candidate is verified against the cut set and box
// before acceptance.
struct DualSolveResult {
  DualSolution solution;
  RatMat m{0, 0};           // assembled dual slack matrix
  Rat objective{0};         // solution.objective()
  Rat kappa{0};             // exact target optimum
  Rat copositivity_margin{0};  // final simplex minimum of m (>= -tol_cop)
  int cuts = 0;
  int rounds = 0;
};
DualSolveResult solve_dual(const RatMat& q, double tol_obj = 1e-6,
                           double tol_cop = 1e-8);

// Completely positive factorization of the slack matrix of the correlation
// polytope COR(n), n <= 3: rows are vertex lifts Y(a) (certified), columns
// are per-facet dual slack matrices M_f with |objective - kappa_f| <= tol_obj.
// By the feasibility identity, |Y(a).M_f - S_af| <= tol_obj uniformly.
struct CorFactorization {
  ZeroOnePolytope polytope;
  HRep facets;
  RatMat slack{0, 0};
  std::vector<VertexLift> lifts;          // vertex order
  std::vector<DualSolveResult> duals;     // facet (row) order
  ConeFactorization factorization;        // states = lifts, responses = duals
  FactorizationReport report;             // from verify_cone_factorization
  Rat max_abs_err{0};                     // max |Y(a).M_f - S_af|
};
CorFactorization factorize_cor_slack(int n, double tol_obj = 1e-6,
                                     double tol_cop = 1e-8);

// The affine description of the completely positive lift of COR(n): the
// 1 + 3n reformulation constraints plus the projection map sending product
// coordinate c to the lifted entry Y_{i,j} (1-based block indices). The
// description is exact but not claimed proper (no interior point).
struct CpExtension {
  int n = 0;
  int m = 0;  // cone side 1 + 2n
  ConeOracle cone;
  std::vector<RatMat> constraint_mats;
  RatVec constraint_rhs;
  std::vector<std::pair<int, int>> projection;  // coord -> (i, j), 1-based
  bool proper = false;
};
CpExtension cp_extension_constraints(int n);

// Projection of a lifted element to the product coordinates.
RatVec project_lift(const CpExtension& e, const RatMat& y);

}  // namespace conekit
