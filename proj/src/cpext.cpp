#include "conekit/cpext.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "conekit/eig.hpp"
#include "conekit/linalg.hpp"
#include "conekit/lp.hpp"
#include "conekit/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace conekit {

namespace {

void check_quadratic(const RatMat& q, const char* who) {
  if (!q.is_square() || q.rows() < 1) {
    throw std::invalid_argument(std::string(who) + ": quadratic form must be square and nonempty");
  }
  if (!q.is_symmetric()) {
    throw std::invalid_argument(std::string(who) + ": quadratic form must be symmetric");
  }
}

// a'Qa at the cube point encoded by idx (a_i = bit i, LSB first).
Rat cube_value(const RatMat& q, unsigned idx) {
  const int n = q.rows();
  Rat v(0);
  for (int i = 0; i < n; ++i) {
    if (!(idx & (1u << i))) continue;
    v += q(i, i);
    for (int j = i + 1; j < n; ++j) {
      if (idx & (1u << j)) v += Rat(2) * q(i, j);
    }
  }
  return v;
}

std::vector<int> idx_bits(unsigned idx, int n) {
  std::vector<int> a(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)] = static_cast<int>((idx >> i) & 1u);
  return a;
}

void check_kappa_side(const RatMat& q) {
  if (q.rows() > 20) {
    throw std::invalid_argument("kappa_min: side exceeds the cube-enumeration cap (20)");
  }
}

}  // namespace

FacetInequality facet_to_quadratic(const RatVec& coeffs, const Rat& rhs, int n) {
  if (n < 1) throw std::invalid_argument("facet_to_quadratic: n must be positive");
  const auto coords = sym_coords(n);
  if (coeffs.size() != coords.size()) {
    throw std::invalid_argument("facet_to_quadratic: coefficient count must be n(n+1)/2");
  }
  FacetInequality f;
  f.q = RatMat(n, n);
  for (size_t c = 0; c < coords.size(); ++c) {
    const auto [i, j] = coords[c];
    if (i == j) {
      f.q(i, i) = coeffs[c];
    } else {
      f.q(i, j) = coeffs[c] / Rat(2);
      f.q(j, i) = f.q(i, j);
    }
  }
  f.kappa = rhs;
  return f;
}

KappaResult kappa_min_serial(const RatMat& q) {
  check_quadratic(q, "kappa_min");
  check_kappa_side(q);
  const int n = q.rows();
  const unsigned total = 1u << n;
  Rat best(0);  // idx 0 evaluates to 0
  unsigned best_idx = 0;
  for (unsigned idx = 1; idx < total; ++idx) {
    Rat v = cube_value(q, idx);
    if (v < best) {  // strict: the first minimizer in counting order wins
      best = std::move(v);
      best_idx = idx;
    }
  }
  return {std::move(best), idx_bits(best_idx, n)};
}

KappaResult kappa_min_parallel(const RatMat& q) {
  check_quadratic(q, "kappa_min");
  check_kappa_side(q);
  const int n = q.rows();
  const std::int64_t total = std::int64_t(1) << n;
  const int nt = max_threads();
  std::vector<std::optional<std::pair<Rat, std::int64_t>>> local(static_cast<size_t>(nt));
#pragma omp parallel num_threads(nt)
  {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
#pragma omp for schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
      Rat v = cube_value(q, static_cast<unsigned>(idx));
      auto& b = local[static_cast<size_t>(tid)];
      if (!b || v < b->first) b = std::make_pair(std::move(v), idx);
    }
  }
  // Deterministic reduction on (value, index): matches the serial result.
  std::optional<std::pair<Rat, std::int64_t>> best;
  for (auto& cand : local) {
    if (!cand) continue;
    if (!best || cand->first < best->first ||
        (cand->first == best->first && cand->second < best->second)) {
      best = std::move(cand);
    }
  }
  return {std::move(best->first), idx_bits(static_cast<unsigned>(best->second), n)};
}

KappaResult kappa_min(const RatMat& q) {
  if (q.rows() >= 10 && parallel_enabled()) return kappa_min_parallel(q);
  return kappa_min_serial(q);
}

BurerPrimal build_primal(const RatMat& q) {
  check_quadratic(q, "build_primal");
  const int n = q.rows();
  BurerPrimal p;
  p.n = n;
  p.m = 1 + 2 * n;
  p.objective = RatMat(p.m, p.m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) p.objective(1 + i, 1 + j) = q(i, j);
  }
  // Scale row: Y_00 = 1.
  {
    RatMat a(p.m, p.m);
    a(0, 0) = 1;
    p.constraint_mats.push_back(std::move(a));
    p.constraint_rhs.push_back(Rat(1));
  }
  // Pair rows: 2(Y_0i + Y_0,n+i) = 2; at a lifted vertex a_i + (1 - a_i) = 1.
  for (int i = 0; i < n; ++i) {
    RatMat a(p.m, p.m);
    a(0, 1 + i) = a(1 + i, 0) = 1;
    a(0, 1 + n + i) = a(1 + n + i, 0) = 1;
    p.constraint_mats.push_back(std::move(a));
    p.constraint_rhs.push_back(Rat(2));
  }
  // Complement squares: (a_i + (1 - a_i))^2 = 1 spelled on the lifted block.
  for (int i = 0; i < n; ++i) {
    RatMat a(p.m, p.m);
    a(1 + i, 1 + i) = 1;
    a(1 + i, 1 + n + i) = a(1 + n + i, 1 + i) = 1;
    a(1 + n + i, 1 + n + i) = 1;
    p.constraint_mats.push_back(std::move(a));
    p.constraint_rhs.push_back(Rat(1));
  }
  // Binary ties: 2 Y_0j - 2 Y_jj = 0, i.e. a_j^2 = a_j.
  for (int j = 0; j < n; ++j) {
    RatMat a(p.m, p.m);
    a(0, 1 + j) = a(1 + j, 0) = 1;
    a(1 + j, 1 + j) = -2;
    p.constraint_mats.push_back(std::move(a));
    p.constraint_rhs.push_back(Rat(0));
  }
  return p;
}

VertexLift vertex_lift(const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  if (n < 1) throw std::invalid_argument("vertex_lift: empty vertex");
  for (int v : a) {
    if (v != 0 && v != 1) throw std::invalid_argument("vertex_lift: entries must be 0/1");
  }
  const int m = 1 + 2 * n;
  RatVec z(static_cast<size_t>(m), Rat(1));
  for (int i = 0; i < n; ++i) {
    z[static_cast<size_t>(1 + i)] = a[static_cast<size_t>(i)];
    z[static_cast<size_t>(1 + n + i)] = 1 - a[static_cast<size_t>(i)];
  }
  VertexLift out;
  out.y = RatMat(m, m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      out.y(r, c) = z[static_cast<size_t>(r)] * z[static_cast<size_t>(c)];
    }
  }
  out.cert.factors.push_back(std::move(z));
  return out;
}

Rat DualSolution::objective() const {
  Rat v = alpha;
  for (const Rat& b : beta) v += Rat(2) * b;
  for (const Rat& g : gamma) v += g;
  return v;
}

RatMat assemble_dual_matrix(const RatMat& q, const DualSolution& v) {
  check_quadratic(q, "assemble_dual_matrix");
  const int n = q.rows();
  const size_t un = static_cast<size_t>(n);
  if (v.beta.size() != un || v.gamma.size() != un || v.delta.size() != un) {
    throw std::invalid_argument("assemble_dual_matrix: variable blocks must have length n");
  }
  const int m = 1 + 2 * n;
  RatMat out(m, m);
  out(0, 0) = -v.alpha;
  for (int i = 0; i < n; ++i) {
    const size_t ui = static_cast<size_t>(i);
    out(0, 1 + i) = out(1 + i, 0) = -v.beta[ui] - v.delta[ui];
    out(0, 1 + n + i) = out(1 + n + i, 0) = -v.beta[ui];
    out(1 + i, 1 + i) = q(i, i) - v.gamma[ui] + Rat(2) * v.delta[ui];
    out(1 + i, 1 + n + i) = out(1 + n + i, 1 + i) = -v.gamma[ui];
    out(1 + n + i, 1 + n + i) = -v.gamma[ui];
    for (int j = 0; j < n; ++j) {
      if (j != i) out(1 + i, 1 + j) = q(i, j);
    }
  }
  return out;
}

DualSolution interior_dual_point(const RatMat& q) {
  check_quadratic(q, "interior_dual_point");
  const int n = q.rows();
  const double lmin = min_eigenvalue(to_double(q));
  DualSolution s;
  s.alpha = rat_from_double(std::min(0.0, 2.0 * lmin)) - 1;
  s.beta.assign(static_cast<size_t>(n), Rat(0));
  s.gamma.assign(static_cast<size_t>(n), s.alpha);
  s.delta.assign(static_cast<size_t>(n), Rat(0));
  return s;
}

bool DualBox::contains(const DualSolution& v) const {
  const size_t n = beta_lo.size();
  if (v.beta.size() != n || v.gamma.size() != n || v.delta.size() != n) return false;
  if (v.alpha < alpha_lo || v.alpha > alpha_hi) return false;
  for (size_t i = 0; i < n; ++i) {
    if (v.beta[i] < beta_lo[i] || v.beta[i] > beta_hi[i]) return false;
    if (v.gamma[i] < gamma_lo[i] || v.gamma[i] > gamma_hi[i]) return false;
    if (v.delta[i] < delta_lo[i] || v.delta[i] > delta_hi[i]) return false;
  }
  return true;
}

DualBox dual_box(const RatMat& q, const Rat& b) {
  check_quadratic(q, "dual_box");
  const int n = q.rows();
  if (b >= kappa_min(q).kappa) {
    throw std::invalid_argument("dual_box: bound must lie strictly below the exact cube minimum");
  }
  DualBox box;
  box.alpha_lo = Rat(2) * b;
  box.alpha_hi = 0;
  for (int i = 0; i < n; ++i) {
    box.beta_lo.push_back(Rat(2 * n - 1) * b / Rat(2));
    box.beta_hi.push_back(Rat(-(2 * n + 3)) * b / Rat(2));
    box.gamma_lo.push_back(Rat(4 * n + 2) * b);
    box.gamma_hi.push_back(Rat(0));
    box.delta_lo.push_back((Rat(4 * n + 2) * b - q(i, i)) / Rat(2));
    box.delta_hi.push_back((q(i, i) - Rat(8 * n + 2) * b) / Rat(2));
  }
  return box;
}

namespace {

// One copositivity cut z'M(v)z >= 0, linear in the dual variables:
// h . v <= g with h_k = z'A_k z and g = z'(objective)z = x'Qx.
struct CutRow {
  RatVec h;  // length 1 + 3n, ordered (alpha, beta.., gamma.., delta..)
  Rat g;
  RatVec z;  // primitive integer simplex direction, for dedupe/diagnostics
};

CutRow make_cut(const RatMat& q, RatVec z) {
  const int n = q.rows();
  CutRow cut;
  const Rat& xi = z[0];
  cut.h.assign(static_cast<size_t>(1 + 3 * n), Rat(0));
  cut.h[0] = xi * xi;
  Rat g(0);
  for (int i = 0; i < n; ++i) {
    const Rat& x = z[static_cast<size_t>(1 + i)];
    const Rat& xb = z[static_cast<size_t>(1 + n + i)];
    const Rat s = x + xb;
    cut.h[static_cast<size_t>(1 + i)] = Rat(2) * xi * s;
    cut.h[static_cast<size_t>(1 + n + i)] = s * s;
    cut.h[static_cast<size_t>(1 + 2 * n + i)] = Rat(2) * x * (xi - x);
    g += q(i, i) * x * x;
    for (int j = i + 1; j < n; ++j) {
      g += Rat(2) * q(i, j) * x * z[static_cast<size_t>(1 + j)];
    }
  }
  cut.g = std::move(g);
  cut.z = std::move(z);
  return cut;
}

DualSolution unflatten(const RatVec& v, int n) {
  DualSolution s;
  s.alpha = v[0];
  s.beta.assign(v.begin() + 1, v.begin() + 1 + n);
  s.gamma.assign(v.begin() + 1 + n, v.begin() + 1 + 2 * n);
  s.delta.assign(v.begin() + 1 + 2 * n, v.end());
  return s;
}

// Maximize c.v over {lo <= v <= hi, cuts[j].h . v <= cuts[j].g}, exactly.
// Posed through its LP dual so the tableau keeps 1 + 3n rows regardless of
// the cut count:
//   minimize g.y + hi.mu_plus - lo.mu_minus
//   s.t. H^T y + mu_plus - mu_minus = c, all variables >= 0.
// The box-LP answer is the equality-row multiplier vector; since every
// variable here is plain nonnegative, those multipliers satisfy exact strong
// duality, which is re-verified below before anything is returned.
struct BoxLpAnswer {
  RatVec v;
  Rat value;
};

BoxLpAnswer solve_box_lp(const std::vector<CutRow>& cuts, const RatVec& lo,
                         const RatVec& hi, const RatVec& c) {
  const int k = static_cast<int>(c.size());
  const int nc = static_cast<int>(cuts.size());
  RatMat a(k, nc + 2 * k);
  RatVec obj(static_cast<size_t>(nc + 2 * k), Rat(0));
  for (int j = 0; j < nc; ++j) {
    for (int r = 0; r < k; ++r) a(r, j) = cuts[static_cast<size_t>(j)].h[static_cast<size_t>(r)];
    obj[static_cast<size_t>(j)] = cuts[static_cast<size_t>(j)].g;
  }
  for (int r = 0; r < k; ++r) {
    a(r, nc + r) = 1;
    obj[static_cast<size_t>(nc + r)] = hi[static_cast<size_t>(r)];
    a(r, nc + k + r) = -1;
    obj[static_cast<size_t>(nc + k + r)] = -lo[static_cast<size_t>(r)];
  }
  const std::vector<LpBound> bounds(static_cast<size_t>(nc + 2 * k), LpBound::nonneg());
  LpResult res = lp_solve(a, c, bounds, obj, LpSense::Minimize);
  if (res.status != LpStatus::Optimal) {
    throw std::logic_error("dual-box LP must be feasible and bounded");
  }
  BoxLpAnswer ans;
  ans.v = res.row_duals;
  ans.value = res.value;
  if (static_cast<int>(ans.v.size()) != k) {
    throw std::logic_error("dual-box LP returned a malformed multiplier vector");
  }
  Rat cv(0);
  for (int r = 0; r < k; ++r) cv += c[static_cast<size_t>(r)] * ans.v[static_cast<size_t>(r)];
  bool ok = cv == ans.value;
  for (int r = 0; ok && r < k; ++r) {
    ok = lo[static_cast<size_t>(r)] <= ans.v[static_cast<size_t>(r)] &&
         ans.v[static_cast<size_t>(r)] <= hi[static_cast<size_t>(r)];
  }
  for (int j = 0; ok && j < nc; ++j) {
    Rat hv(0);
    for (int r = 0; r < k; ++r) {
      hv += cuts[static_cast<size_t>(j)].h[static_cast<size_t>(r)] * ans.v[static_cast<size_t>(r)];
    }
    ok = hv <= cuts[static_cast<size_t>(j)].g;
  }
  if (!ok) {
    throw std::logic_error("dual-box LP multipliers failed the exact optimality check");
  }
  return ans;
}

}  // namespace

DualSolveResult solve_dual(const RatMat& q, double tol_obj, double tol_cop) {
  check_quadratic(q, "solve_dual");
  const int n = q.rows();
  if (1 + 2 * n > 14) {
    throw std::invalid_argument("solve_dual: cone side 1 + 2n exceeds the separation cap (14)");
  }
  if (!(tol_obj > 0) || !(tol_cop > 0)) {
    throw std::invalid_argument("solve_dual: tolerances must be positive");
  }
  const int m = 1 + 2 * n;
  const int k = 1 + 3 * n;

  const Rat kap = kappa_min(q).kappa;
  const DualBox box = dual_box(q, kap - 1);
  const DualSolution incumbent = interior_dual_point(q);

  RatVec lo, hi;
  lo.reserve(static_cast<size_t>(k));
  hi.reserve(static_cast<size_t>(k));
  lo.push_back(box.alpha_lo);
  hi.push_back(box.alpha_hi);
  for (int i = 0; i < n; ++i) {
    lo.push_back(box.beta_lo[static_cast<size_t>(i)]);
    hi.push_back(box.beta_hi[static_cast<size_t>(i)]);
  }
  for (int i = 0; i < n; ++i) {
    lo.push_back(box.gamma_lo[static_cast<size_t>(i)]);
    hi.push_back(box.gamma_hi[static_cast<size_t>(i)]);
  }
  for (int i = 0; i < n; ++i) {
    lo.push_back(box.delta_lo[static_cast<size_t>(i)]);
    hi.push_back(box.delta_hi[static_cast<size_t>(i)]);
  }

  RatVec c(static_cast<size_t>(k), Rat(0));
  c[0] = 1;
  for (int i = 0; i < n; ++i) {
    c[static_cast<size_t>(1 + i)] = 2;
    c[static_cast<size_t>(1 + n + i)] = 1;
  }

  std::vector<CutRow> cuts;
  std::set<RatVec> seen;
  const auto add_cut = [&](const RatVec& z_raw) {
    RatVec z = primitive(z_raw, /*fix_sign=*/false);
    if (!seen.insert(z).second) return false;
    cuts.push_back(make_cut(q, std::move(z)));
    return true;
  };

  // Always-valid seed cuts: vertices, midpoints of edges, the barycenter
  // (scale-free, so the unnormalized integer directions serve).
  for (int i = 0; i < m; ++i) {
    RatVec z(static_cast<size_t>(m), Rat(0));
    z[static_cast<size_t>(i)] = 1;
    add_cut(z);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      RatVec z(static_cast<size_t>(m), Rat(0));
      z[static_cast<size_t>(i)] = 1;
      z[static_cast<size_t>(j)] = 1;
      add_cut(z);
    }
  }
  add_cut(RatVec(static_cast<size_t>(m), Rat(1)));

  const Rat tol_obj_r = rat_from_double(tol_obj);
  const Rat tol_cop_r = rat_from_double(tol_cop);
  constexpr int kMaxCuts = 10000;
  constexpr int kCutsPerRound = 8;

  DualSolveResult out;
  out.kappa = kap;
  for (int round = 0;; ++round) {
    const BoxLpAnswer lp = solve_box_lp(cuts, lo, hi, c);
    DualSolution v = unflatten(lp.v, n);
    RatMat dual_mat = assemble_dual_matrix(q, v);
    SimplexQuadMin sep = simplex_min_quadratic(dual_mat);
    const Rat gap = lp.value - kap;
    if (gap < 0) {
      // The LP relaxes a problem whose optimum is exactly kappa.
      throw std::logic_error("cutting-plane relaxation fell below the exact optimum");
    }
    if (sep.value >= -tol_cop_r && gap <= tol_obj_r) {
      out.solution = std::move(v);
      out.m = std::move(dual_mat);
      out.objective = lp.value;
      out.copositivity_margin = std::move(sep.value);
      out.cuts = static_cast<int>(cuts.size());
      out.rounds = round + 1;
      return out;
    }
    if (sep.value >= 0) {
      // An exactly copositive candidate is dual feasible, forcing its
      // objective under kappa; with gap > tol_obj that is contradictory.
      throw std::logic_error("exactly copositive candidate left an objective gap");
    }
    if (static_cast<int>(cuts.size()) >= kMaxCuts) {
      std::ostringstream os;
      os << "cutting-plane solver hit the cut cap (" << kMaxCuts << "): objective "
         << rat_to_string(lp.value) << ", target " << rat_to_string(kap) << ", separation "
         << to_double(sep.value) << "; strictly feasible incumbent objective "
         << rat_to_string(incumbent.objective());
      throw std::runtime_error(os.str());
    }
    // Cut the most violated stationary points (the global minimizer is
    // always among them and always new: the LP answer satisfied every
    // existing cut exactly).
    const auto cands = simplex_min_candidates(dual_mat, kCutsPerRound);
    int added = 0;
    for (const auto& cand : cands) {
      if (cand.value < 0 && add_cut(cand.argmin)) ++added;
    }
    if (added == 0) {
      throw std::logic_error("separation produced no new cut despite a negative minimum");
    }
  }
}

CorFactorization factorize_cor_slack(int n, double tol_obj, double tol_cop) {
  if (n < 1 || n > 3) {
    throw std::invalid_argument("factorize_cor_slack: n must be between 1 and 3");
  }
  CorFactorization out{correlation_polytope(n), {}, RatMat(0, 0), {}, {}, {}, {}, Rat(0)};
  out.facets = facet_enum(out.polytope);
  out.slack = slack_matrix(out.polytope, out.facets);

  const int nf = out.facets.a.rows();
  const int d = out.facets.a.cols();
  std::vector<FacetInequality> facets(static_cast<size_t>(nf));
  for (int f = 0; f < nf; ++f) {
    RatVec row(static_cast<size_t>(d));
    for (int c = 0; c < d; ++c) row[static_cast<size_t>(c)] = out.facets.a(f, c);
    facets[static_cast<size_t>(f)] = facet_to_quadratic(row, out.facets.b[static_cast<size_t>(f)], n);
    // A facet inequality touches the polytope, so its rhs must be the exact
    // minimum of the quadratic form over the cube.
    if (kappa_min(facets[static_cast<size_t>(f)].q).kappa != facets[static_cast<size_t>(f)].kappa) {
      throw std::logic_error("facet rhs must equal the exact cube minimum of its quadratic form");
    }
  }

  out.duals.resize(static_cast<size_t>(nf));
  std::vector<std::string> errors(static_cast<size_t>(nf));
#pragma omp parallel for schedule(dynamic) if (parallel_enabled() && nf > 1)
  for (int f = 0; f < nf; ++f) {
    try {
      out.duals[static_cast<size_t>(f)] = solve_dual(facets[static_cast<size_t>(f)].q, tol_obj, tol_cop);
    } catch (const std::exception& e) {
      errors[static_cast<size_t>(f)] = e.what();
    }
  }
  for (int f = 0; f < nf; ++f) {
    if (!errors[static_cast<size_t>(f)].empty()) {
      throw std::runtime_error("facet " + std::to_string(f) + ": " + errors[static_cast<size_t>(f)]);
    }
  }

  const int nv = static_cast<int>(out.polytope.vertices.size());
  out.lifts.resize(static_cast<size_t>(nv));
  for (int vx = 0; vx < nv; ++vx) {
    // The first n product coordinates are the diagonal, i.e. the cube point.
    std::vector<int> a(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      a[static_cast<size_t>(i)] = out.polytope.vertices[static_cast<size_t>(vx)][static_cast<size_t>(i)] == 1 ? 1 : 0;
    }
    out.lifts[static_cast<size_t>(vx)] = vertex_lift(a);
  }

  const int m = 1 + 2 * n;
  out.factorization.cone = completely_positive_cone(m);
  for (const VertexLift& l : out.lifts) {
    out.factorization.states.push_back(l.y);
    out.factorization.state_certs.push_back(l.cert);
  }
  for (const DualSolveResult& ds : out.duals) out.factorization.responses.push_back(ds.m);

  out.report = verify_cone_factorization(out.slack, out.factorization.states,
                                         out.factorization.responses, out.factorization.cone,
                                         tol_obj, &out.factorization.state_certs, nullptr);
  out.max_abs_err = out.report.max_abs_err;
  if (!out.report.ok()) {
    throw std::logic_error("completely positive factorization failed verification: " + out.report.note);
  }
  return out;
}

CpExtension cp_extension_constraints(int n) {
  if (n < 1) throw std::invalid_argument("cp_extension_constraints: n must be positive");
  BurerPrimal p = build_primal(RatMat(n, n));
  CpExtension e;
  e.n = n;
  e.m = p.m;
  e.cone = completely_positive_cone(p.m);
  e.constraint_mats = std::move(p.constraint_mats);
  e.constraint_rhs = std::move(p.constraint_rhs);
  for (const auto& [i, j] : sym_coords(n)) e.projection.emplace_back(i + 1, j + 1);
  e.proper = false;
  return e;
}

RatVec project_lift(const CpExtension& e, const RatMat& y) {
  if (y.rows() != e.m || y.cols() != e.m) {
    throw std::invalid_argument("project_lift: lift must be m x m");
  }
  RatVec z;
  z.reserve(e.projection.size());
  // The stored pairs are 1-based block indices, which coincide with 0-based
  // entry positions because row 0 of the lift is the scale row.
  for (const auto& [i, j] : e.projection) z.push_back(y(i, j));
  return z;
}

}  // namespace conekit
