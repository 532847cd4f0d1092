#pragma once

#include <string>
#include <vector>

#include "conekit/cones.hpp"
#include "conekit/matrix.hpp"

namespace conekit {

// 0/1 polytope given by its vertex list. Vertices are pairwise distinct 0/1
// vectors; the list is nonempty. Construct through make_zero_one_polytope (or
// correlation_polytope) so the invariants are enforced.
struct ZeroOnePolytope {
  int dim = 0;
  std::vector<RatVec> vertices;
};

ZeroOnePolytope make_zero_one_polytope(int dim, std::vector<RatVec> vertices);

// Correlation polytope COR(n): convex hull of the upper triangles of a a^T
// over a in {0,1}^n, in the d = n(n+1)/2 coordinates ordered diagonal-first
// (z_11..z_nn, then z_ij for i < j lexicographically). Vertex order: index
// idx = 0..2^n-1 with a_i = bit i-1 of idx (least significant bit first).
// Requires 1 <= n <= 5.
ZeroOnePolytope correlation_polytope(int n);

// Irredundant H-representation {x : A x >= b} intersected with the affine
// hull {x : eq_a x = eq_b}. Inequality rows are reduced modulo the equality
// system, scaled so the first nonzero coefficient has absolute value one
// (sign preserved), and sorted lexicographically by (row of A, entry of b).
// Equality rows are the reduced row echelon form of the affine hull.
struct HRep {
  RatMat a{0, 0};
  RatVec b;
  RatMat eq_a{0, 0};
  RatVec eq_b;
};

// Exact facet enumeration by double description over the homogenization,
// with lexicographic insertion order and combinatorial adjacency. Desk
// scale: dim <= 8 and at most 64 vertices. A single point yields an empty
// inequality list plus dim equalities.
HRep facet_enum(const ZeroOnePolytope& p);

// Slack matrix S(v, f) = A_f . v - b_f, rows indexed by vertices in polytope
// order, columns by facets in HRep order. Exact; throws when H is
// inconsistent with P (a negative slack or a violated equality).
RatMat slack_matrix(const ZeroOnePolytope& p, const HRep& h);
RatMat slack_matrix_serial(const ZeroOnePolytope& p, const HRep& h);  // reference kernel

// Check an S = <T_v, U_f> cone factorization: T_v in cone k, U_f in the dual
// cone, pairings matching S entrywise. Membership on the completely positive
// side is decided only through the optional certificate lists (entries may
// then come back Unknown; that is reported, not treated as NotMember).
struct FactorizationReport {
  Rat max_abs_err;        // max over (v, f) of |<T_v, U_f> - S_vf|
  bool pairing_ok = false;    // max_abs_err <= tol
  bool membership_ok = false; // every element certified Member
  int not_member = 0;         // elements whose membership test failed
  int unknown = 0;            // elements whose membership is undecided
  std::string note;
  bool ok() const { return pairing_ok && membership_ok; }
};

FactorizationReport verify_cone_factorization(
    const RatMat& s, const std::vector<RatMat>& t, const std::vector<RatMat>& u,
    const ConeOracle& k, double tol,
    const std::vector<CpCertificate>* t_certs = nullptr,
    const std::vector<CpCertificate>* u_certs = nullptr);

// The trivial factorization S = S . I over the orthant of dimension
// #facets: T_v = row v of S, U_f = e_f. Exact for every nonnegative S.
struct TrivialFactorization {
  ConeOracle cone;
  std::vector<RatMat> t;
  std::vector<RatMat> u;
};
TrivialFactorization trivial_orthant_factorization(const RatMat& s);

}  // namespace conekit
