#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conekit/matrix.hpp"

namespace conekit {

enum class ConeKind { Orthant, Psd, Copositive, CompletelyPositive };

std::string cone_kind_name(ConeKind k);
ConeKind cone_kind_from_name(const std::string& name);

// Proper-cone oracle. `ambient` is the vector length for the orthant and the
// matrix side d for the three matrix cones. Elements are column vectors
// (orthant) or symmetric d x d matrices (matrix cones); the inner product is
// the dot / Frobenius pairing in both cases.
struct ConeOracle {
  ConeKind kind = ConeKind::Orthant;
  int ambient = 0;

  // Linear dimension of the span: ambient for the orthant, d(d+1)/2 for the
  // matrix cones (real symmetric matrices).
  int gpt_dim() const;
  bool is_matrix_cone() const { return kind != ConeKind::Orthant; }
  ConeOracle dual() const;  // orthant/psd self-dual; copositive <-> completely positive
  bool operator==(const ConeOracle& o) const { return kind == o.kind && ambient == o.ambient; }

  // Shape check + exact symmetry requirement for matrix cones.
  void require_element_shape(const RatMat& x, const char* who) const;
};

inline ConeOracle orthant_cone(int n) { return {ConeKind::Orthant, n}; }
inline ConeOracle psd_cone(int d) { return {ConeKind::Psd, d}; }
inline ConeOracle copositive_cone(int d) { return {ConeKind::Copositive, d}; }
inline ConeOracle completely_positive_cone(int d) { return {ConeKind::CompletelyPositive, d}; }

// Membership certificate for the completely positive cone: entrywise
// nonnegative factors z_k representing sum_k z_k z_k^T.
struct CpCertificate {
  std::vector<RatVec> factors;
  RatMat reconstruct(int d) const;
  bool factors_nonnegative() const;
};

enum class Membership { Member, NotMember, Unknown };

struct ContainsResult {
  Membership status = Membership::Unknown;
  // Violation witness: axis vector (orthant), eigenvector (psd), simplex
  // argmin (copositive). Empty when not applicable.
  std::optional<RatMat> witness;
  // Signed margin where meaningful: min entry / min eigenvalue / simplex min.
  std::optional<Rat> margin;
  std::string note;
};

// Membership test. Orthant: exact sign test (tol unused). Psd: float minimum
// eigenvalue >= -tol. Copositive: exact simplex minimum >= -tol.
// Completely positive: decided only through a certificate (reconstruction
// error <= tol -> Member; failed reconstruction or missing certificate ->
// Unknown, with a note in the failed case).
ContainsResult contains(const ConeOracle& k, const RatMat& x, double tol,
                        const CpCertificate* cert = nullptr);

// Global minimum of z^T M z over the probability simplex, exact. Enumerates
// KKT support sets (supports whose restricted stationarity system is
// singular cannot carry the minimum of a minimal optimal face and are
// skipped) plus all vertices. Ties broken toward the lexicographically
// smallest argmin. Requires symmetric M with side <= 14.
struct SimplexQuadMin {
  Rat value;
  RatVec argmin;
};
SimplexQuadMin simplex_min_quadratic(const RatMat& m);
SimplexQuadMin simplex_min_quadratic_serial(const RatMat& m);    // reference kernel
SimplexQuadMin simplex_min_quadratic_parallel(const RatMat& m);  // OpenMP kernel

// Up to max_count lowest-value KKT candidates, sorted by value then
// lexicographic argmin — for separation oracles that cut several violated
// points per round. Same support enumeration as simplex_min_quadratic.
std::vector<SimplexQuadMin> simplex_min_candidates(const RatMat& m, int max_count);

// Caratheodory weights: lambda >= 0 with sum_i lambda_i e_i = u and at most
// gpt_dim(K) nonzero entries (a basic solution of the exact LP).
RatVec caratheodory_unit(const std::vector<RatMat>& effects, const RatMat& u,
                         const ConeOracle& k);

// Split a cone element into extremal pieces summing to it. Orthant:
// coordinate split (exact). Psd: float spectral split into rank-1 parts
// (eigenvalues <= tol * (1 + max|eig|) are dropped). Unsupported for the
// copositive / completely positive cones.
std::vector<RatMat> extremal_refine(const ConeOracle& k, const RatMat& e, double tol = 1e-12);

// Strict interiority: positive entries (orthant), positive minimum
// eigenvalue (psd), positive simplex minimum (copositive), each beyond
// strict_tol. Not decidable for the completely positive cone (throws).
bool is_interior(const ConeOracle& k, const RatMat& x, double strict_tol = 1e-12);

// Least mu with mu*u - v in the given cone, found by bisection to relative
// tolerance rel_tol (the returned value is on the member side). u must be
// interior (strict inequalities tested at 1e-12).
Rat min_scale_dominating(const RatMat& v, const RatMat& u, const ConeOracle& element_cone,
                         double rel_tol = 1e-9, double member_tol = 1e-12);

}  // namespace conekit
