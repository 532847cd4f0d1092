#include "conekit/cones.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "conekit/eig.hpp"
#include "conekit/linalg.hpp"
#include "conekit/lp.hpp"
#include "conekit/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace conekit {

std::string cone_kind_name(ConeKind k) {
  switch (k) {
    case ConeKind::Orthant: return "orthant";
    case ConeKind::Psd: return "psd";
    case ConeKind::Copositive: return "copositive";
    case ConeKind::CompletelyPositive: return "completely_positive";
  }
  throw std::logic_error("cone_kind_name: bad kind");
}

ConeKind cone_kind_from_name(const std::string& name) {
  if (name == "orthant") return ConeKind::Orthant;
  if (name == "psd") return ConeKind::Psd;
  if (name == "copositive") return ConeKind::Copositive;
  if (name == "completely_positive") return ConeKind::CompletelyPositive;
  throw std::invalid_argument("unknown cone kind '" + name + "'");
}

int ConeOracle::gpt_dim() const {
  if (ambient <= 0) throw std::invalid_argument("ConeOracle: ambient must be positive");
  return kind == ConeKind::Orthant ? ambient : ambient * (ambient + 1) / 2;
}

ConeOracle ConeOracle::dual() const {
  switch (kind) {
    case ConeKind::Orthant: return {ConeKind::Orthant, ambient};
    case ConeKind::Psd: return {ConeKind::Psd, ambient};
    case ConeKind::Copositive: return {ConeKind::CompletelyPositive, ambient};
    case ConeKind::CompletelyPositive: return {ConeKind::Copositive, ambient};
  }
  throw std::logic_error("ConeOracle::dual: bad kind");
}

void ConeOracle::require_element_shape(const RatMat& x, const char* who) const {
  if (kind == ConeKind::Orthant) {
    if (x.rows() != ambient || x.cols() != 1)
      throw std::invalid_argument(std::string(who) + ": orthant element must be a " +
                                  std::to_string(ambient) + "-vector");
    return;
  }
  if (x.rows() != ambient || x.cols() != ambient)
    throw std::invalid_argument(std::string(who) + ": matrix-cone element must be " +
                                std::to_string(ambient) + "x" + std::to_string(ambient));
  if (!x.is_symmetric())
    throw std::invalid_argument(std::string(who) + ": matrix-cone element must be symmetric");
}

RatMat CpCertificate::reconstruct(int d) const {
  RatMat s(d, d);
  for (const auto& z : factors) {
    if (static_cast<int>(z.size()) != d)
      throw std::invalid_argument("CpCertificate: factor length mismatch");
    for (int i = 0; i < d; ++i) {
      if (z[i] == 0) continue;
      for (int j = 0; j < d; ++j) s(i, j) += z[i] * z[j];
    }
  }
  return s;
}

bool CpCertificate::factors_nonnegative() const {
  for (const auto& z : factors)
    for (const auto& x : z)
      if (x < 0) return false;
  return true;
}

ContainsResult contains(const ConeOracle& k, const RatMat& x, double tol,
                        const CpCertificate* cert) {
  k.require_element_shape(x, "contains");
  ContainsResult r;
  switch (k.kind) {
    case ConeKind::Orthant: {
      int bad = -1;
      Rat minv;
      for (int i = 0; i < x.rows(); ++i) {
        if (i == 0 || x(i, 0) < minv) minv = x(i, 0);
        if (bad < 0 && x(i, 0) < 0) bad = i;
      }
      r.margin = minv;
      if (bad >= 0) {
        r.status = Membership::NotMember;
        RatMat w(x.rows(), 1);
        w(bad, 0) = 1;
        r.witness = w;
      } else {
        r.status = Membership::Member;
      }
      return r;
    }
    case ConeKind::Psd: {
      auto e = sym_eig(to_double(x));
      double lmin = e.eigenvalues.front();
      r.margin = rat_from_double(lmin);
      if (lmin >= -tol) {
        r.status = Membership::Member;
      } else {
        r.status = Membership::NotMember;
        DMat v(x.rows(), 1);
        for (int i = 0; i < x.rows(); ++i) v(i, 0) = e.eigenvectors(i, 0);
        r.witness = to_rational(v);
      }
      return r;
    }
    case ConeKind::Copositive: {
      auto sm = simplex_min_quadratic(x);
      r.margin = sm.value;
      if (sm.value >= -rat_from_double(tol)) {
        r.status = Membership::Member;
      } else {
        r.status = Membership::NotMember;
        r.witness = RatMat::col(sm.argmin);
      }
      return r;
    }
    case ConeKind::CompletelyPositive: {
      if (cert == nullptr) {
        r.status = Membership::Unknown;
        r.note = "completely positive membership requires a certificate";
        return r;
      }
      if (!cert->factors_nonnegative()) {
        r.status = Membership::Unknown;
        r.note = "certificate has a negative factor entry";
        return r;
      }
      RatMat recon = cert->reconstruct(k.ambient);
      Rat err = max_abs_entry(recon - x);
      r.margin = err;
      if (err <= rat_from_double(tol)) {
        r.status = Membership::Member;
      } else {
        r.status = Membership::Unknown;
        r.note = "certificate reconstruction error exceeds tolerance";
      }
      return r;
    }
  }
  throw std::logic_error("contains: bad cone kind");
}

namespace {

// One support set's KKT candidate. For support S the stationarity system is
//   [ 2 M_SS  -1 ] [z_S    ]   [0]
//   [ 1^T      0 ] [lambda ] = [1];
// a singular system is skipped (the minimum over a minimal optimal face
// always has a nonsingular system; see the library notes in the README).
struct Candidate {
  bool ok = false;
  Rat value;
  RatVec z;  // full-length, zeros off support
};

Candidate support_candidate(const RatMat& m, unsigned mask) {
  const int n = m.rows();
  Candidate c;
  std::vector<int> idx;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) idx.push_back(i);
  const int k = static_cast<int>(idx.size());

  if (k == 1) {  // vertex: always a candidate
    c.ok = true;
    c.z.assign(n, Rat(0));
    c.z[idx[0]] = 1;
    c.value = m(idx[0], idx[0]);
    return c;
  }

  RatMat sys(k + 1, k + 1);
  RatVec rhs(k + 1, Rat(0));
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) sys(a, b) = Rat(2) * m(idx[a], idx[b]);
    sys(a, k) = -1;
    sys(k, a) = 1;
  }
  rhs[k] = 1;
  auto sol = solve_linear(sys, rhs);
  if (!sol) return c;  // singular: skip

  for (int a = 0; a < k; ++a)
    if ((*sol)[a] <= 0) return c;  // not in the relative interior
  const Rat& lambda = (*sol)[k];

  // Off-support dual feasibility: (2 M z)_j >= lambda.
  c.z.assign(n, Rat(0));
  for (int a = 0; a < k; ++a) c.z[idx[a]] = (*sol)[a];
  for (int j = 0; j < n; ++j) {
    if (mask & (1u << j)) continue;
    Rat g(0);
    for (int a = 0; a < k; ++a) g += Rat(2) * m(j, idx[a]) * c.z[idx[a]];
    if (g < lambda) return c;
  }

  Rat value(0);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) value += c.z[idx[a]] * m(idx[a], idx[b]) * c.z[idx[b]];
  c.ok = true;
  c.value = value;
  return c;
}

bool lex_less(const RatVec& a, const RatVec& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

void take_better(std::optional<SimplexQuadMin>& best, Candidate&& c) {
  if (!c.ok) return;
  if (!best || c.value < best->value ||
      (c.value == best->value && lex_less(c.z, best->argmin))) {
    best = SimplexQuadMin{std::move(c.value), std::move(c.z)};
  }
}

void check_sqm_input(const RatMat& m) {
  if (!m.is_square() || m.rows() < 1)
    throw std::invalid_argument("simplex_min_quadratic: matrix must be square and nonempty");
  if (m.rows() > 14)
    throw std::invalid_argument("simplex_min_quadratic: side exceeds the support-enumeration cap (14)");
  if (!m.is_symmetric())
    throw std::invalid_argument("simplex_min_quadratic: matrix must be symmetric");
}

}  // namespace

SimplexQuadMin simplex_min_quadratic_serial(const RatMat& m) {
  check_sqm_input(m);
  const unsigned total = 1u << m.rows();
  std::optional<SimplexQuadMin> best;
  for (unsigned mask = 1; mask < total; ++mask) take_better(best, support_candidate(m, mask));
  return *best;  // vertices always produce candidates
}

SimplexQuadMin simplex_min_quadratic_parallel(const RatMat& m) {
  check_sqm_input(m);
  const unsigned total = 1u << m.rows();
  const int nt = max_threads();
  std::vector<std::optional<SimplexQuadMin>> local(nt);
#pragma omp parallel num_threads(nt)
  {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
#pragma omp for schedule(static)
    for (int mask = 1; mask < static_cast<int>(total); ++mask)
      take_better(local[tid], support_candidate(m, static_cast<unsigned>(mask)));
  }
  // Deterministic reduction: same comparator, fixed thread order.
  std::optional<SimplexQuadMin> best;
  for (auto& cand : local) {
    if (!cand) continue;
    Candidate c;
    c.ok = true;
    c.value = std::move(cand->value);
    c.z = std::move(cand->argmin);
    take_better(best, std::move(c));
  }
  return *best;
}

SimplexQuadMin simplex_min_quadratic(const RatMat& m) {
  if (m.rows() >= 8 && parallel_enabled()) return simplex_min_quadratic_parallel(m);
  return simplex_min_quadratic_serial(m);
}

std::vector<SimplexQuadMin> simplex_min_candidates(const RatMat& m, int max_count) {
  check_sqm_input(m);
  if (max_count < 1) throw std::invalid_argument("simplex_min_candidates: max_count must be positive");
  std::vector<SimplexQuadMin> all;
  const unsigned total = 1u << m.rows();
  for (unsigned mask = 1; mask < total; ++mask) {
    Candidate c = support_candidate(m, mask);
    if (c.ok) all.push_back(SimplexQuadMin{std::move(c.value), std::move(c.z)});
  }
  std::sort(all.begin(), all.end(), [](const SimplexQuadMin& a, const SimplexQuadMin& b) {
    if (a.value != b.value) return a.value < b.value;
    return lex_less(a.argmin, b.argmin);
  });
  if (static_cast<int>(all.size()) > max_count) all.resize(static_cast<size_t>(max_count));
  return all;
}

RatVec caratheodory_unit(const std::vector<RatMat>& effects, const RatMat& u,
                         const ConeOracle& k) {
  if (effects.empty()) throw std::invalid_argument("caratheodory_unit: no effects");
  k.require_element_shape(u, "caratheodory_unit");
  for (const auto& e : effects) k.require_element_shape(e, "caratheodory_unit");

  const int rows = k.gpt_dim();
  const int cols = static_cast<int>(effects.size());
  RatMat a(rows, cols);
  RatVec b(rows);
  if (k.kind == ConeKind::Orthant) {
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) a(i, j) = effects[j](i, 0);
      b[i] = u(i, 0);
    }
  } else {
    auto coords = sym_coords(k.ambient);
    for (int i = 0; i < rows; ++i) {
      auto [p, q] = coords[i];
      for (int j = 0; j < cols; ++j) a(i, j) = effects[j](p, q);
      b[i] = u(p, q);
    }
  }
  std::vector<LpBound> bounds(cols, LpBound::nonneg());
  RatVec obj(cols, Rat(0));
  auto lp = lp_solve(a, b, bounds, obj, LpSense::Minimize);
  if (lp.status != LpStatus::Optimal)
    throw std::invalid_argument("caratheodory_unit: u is not the stated sum of the effects");

  int nonzeros = 0;
  for (const auto& x : lp.x)
    if (x != 0) ++nonzeros;
  if (nonzeros > rows)
    throw std::runtime_error("caratheodory_unit: solver returned a non-basic point");
  return lp.x;
}

std::vector<RatMat> extremal_refine(const ConeOracle& k, const RatMat& e, double tol) {
  k.require_element_shape(e, "extremal_refine");
  std::vector<RatMat> parts;
  switch (k.kind) {
    case ConeKind::Orthant: {
      for (int i = 0; i < e.rows(); ++i) {
        if (e(i, 0) == 0) continue;
        if (e(i, 0) < 0)
          throw std::invalid_argument("extremal_refine: element outside the orthant");
        RatMat p(e.rows(), 1);
        p(i, 0) = e(i, 0);
        parts.push_back(std::move(p));
      }
      return parts;
    }
    case ConeKind::Psd: {
      auto eig = sym_eig(to_double(e));
      const int d = e.rows();
      double lmax = 0.0;
      for (double w : eig.eigenvalues) lmax = std::max(lmax, std::fabs(w));
      const double drop = tol * (1.0 + lmax);
      for (int i = d - 1; i >= 0; --i) {
        double w = eig.eigenvalues[i];
        if (w <= drop) {
          if (w < -drop)
            throw std::invalid_argument("extremal_refine: element outside the psd cone");
          continue;
        }
        DMat p(d, d);
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c)
            p(r, c) = w * eig.eigenvectors(r, i) * eig.eigenvectors(c, i);
        // Symmetrize exactly after rationalizing so the element contract holds.
        RatMat rp = to_rational(p);
        for (int r = 0; r < d; ++r)
          for (int c = r + 1; c < d; ++c) {
            Rat avg = (rp(r, c) + rp(c, r)) / 2;
            rp(r, c) = avg;
            rp(c, r) = avg;
          }
        parts.push_back(std::move(rp));
      }
      return parts;
    }
    default:
      throw std::invalid_argument(
          "extremal_refine: unsupported for the copositive / completely positive cones");
  }
}

bool is_interior(const ConeOracle& k, const RatMat& x, double strict_tol) {
  k.require_element_shape(x, "is_interior");
  switch (k.kind) {
    case ConeKind::Orthant: {
      for (int i = 0; i < x.rows(); ++i)
        if (x(i, 0) <= rat_from_double(strict_tol)) return false;
      return true;
    }
    case ConeKind::Psd:
      return min_eigenvalue(to_double(x)) > strict_tol;
    case ConeKind::Copositive:
      // Interior of the copositive cone: strictly positive simplex minimum.
      return simplex_min_quadratic(x).value > rat_from_double(strict_tol);
    default:
      throw std::invalid_argument(
          "is_interior: completely positive interiority needs certificates; unsupported");
  }
}

Rat min_scale_dominating(const RatMat& v, const RatMat& u, const ConeOracle& element_cone,
                         double rel_tol, double member_tol) {
  element_cone.require_element_shape(v, "min_scale_dominating");
  element_cone.require_element_shape(u, "min_scale_dominating");
  if (!is_interior(u, element_cone, 1e-12))
    throw std::invalid_argument("min_scale_dominating: u is not interior to the cone");

  auto member = [&](const Rat& mu) {
    RatMat cand = u * mu - v;
    return contains(element_cone, cand, member_tol).status == Membership::Member;
  };

  Rat lo(0), hi(1);
  if (member(0)) return Rat(0);
  int guard = 0;
  while (!member(hi)) {
    lo = hi;
    hi *= 2;
    if (++guard > 256)
      throw std::runtime_error("min_scale_dominating: no dominating scale found (is u interior?)");
  }
  const Rat tol_r = rat_from_double(rel_tol);
  while (hi - lo > tol_r * std::max(Rat(1), hi)) {
    Rat mid = (lo + hi) / 2;
    if (member(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;  // member side
}

}  // namespace conekit
