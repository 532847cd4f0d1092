#include "conekit/lp.hpp"

#include <algorithm>

namespace conekit {

namespace {

// Dense simplex tableau over the standard-form problem
//   minimize c.s  s.t.  T s = rhs, s >= 0
// kept in canonical form with respect to `basis` (basic columns are unit
// columns). `obj` holds reduced costs; `objval` the negated current
// objective so that pivots update it like any other row.
struct Tableau {
  RatMat t;               // rows x (ncols + 1); last column is the rhs
  RatVec obj;             // reduced costs, length ncols
  Rat objval{0};          // current objective value (not negated)
  std::vector<int> basis; // basis[i] = column basic in row i

  int rows() const { return t.rows(); }
  int cols() const { return static_cast<int>(obj.size()); }
  Rat& rhs(int r) { return t(r, cols()); }
  const Rat& rhs(int r) const { return t(r, cols()); }

  void pivot(int pr, int pc) {
    Rat piv = t(pr, pc);
    for (int j = 0; j <= cols(); ++j) t(pr, j) /= piv;
    for (int i = 0; i < rows(); ++i) {
      if (i == pr || t(i, pc) == 0) continue;
      Rat f = t(i, pc);
      for (int j = 0; j <= cols(); ++j) t(i, j) -= f * t(pr, j);
    }
    if (obj[pc] != 0) {
      Rat f = obj[pc];
      for (int j = 0; j < cols(); ++j) obj[j] -= f * t(pr, j);
      objval += f * rhs(pr);  // objective decreases by f * new basic value
    }
    basis[pr] = pc;
  }

  // Bland's rule: entering column is the lowest-index eligible column with a
  // negative reduced cost; leaving row minimizes the ratio with ties broken
  // by the lowest basic variable index. Returns false at optimality; throws
  // never; sets *unbounded when no leaving row exists.
  bool step(const std::vector<bool>& allowed, bool* unbounded) {
    *unbounded = false;
    int pc = -1;
    for (int j = 0; j < cols(); ++j)
      if (allowed[j] && obj[j] < 0) {
        pc = j;
        break;
      }
    if (pc < 0) return false;
    int pr = -1;
    Rat best;
    for (int i = 0; i < rows(); ++i) {
      if (t(i, pc) <= 0) continue;
      Rat ratio = rhs(i) / t(i, pc);
      if (pr < 0 || ratio < best || (ratio == best && basis[i] < basis[pr])) {
        pr = i;
        best = ratio;
      }
    }
    if (pr < 0) {
      *unbounded = true;
      return false;
    }
    pivot(pr, pc);
    return true;
  }
};

}  // namespace

LpResult lp_solve(const RatMat& A, const RatVec& b, const std::vector<LpBound>& bounds,
                  const RatVec& c, LpSense sense) {
  const int m = A.rows();
  const int n = A.cols();
  if (static_cast<int>(b.size()) != m || static_cast<int>(c.size()) != n ||
      static_cast<int>(bounds.size()) != n)
    throw std::invalid_argument("lp_solve: shape mismatch");
  for (const auto& bd : bounds)
    if (bd.lo && bd.hi && *bd.lo > *bd.hi) return {LpStatus::Infeasible, {}, Rat(0), {}};

  // --- Translate to standard form: x_j = shift_j + sign_j * s_p (+ optional
  // pairing s_p - s_q for free variables); finite two-sided bounds add a row
  // s_p + s_q = hi - lo. Standard variables are all nonnegative.
  struct VarMap {
    int pos = -1, neg = -1;  // standard-variable indices
    Rat shift{0};
    int sign = 1;  // x = shift + sign*s_pos (+ (-1)*s_neg for free vars)
  };
  std::vector<VarMap> vmap(n);
  int ns = 0;
  int extra_rows = 0;
  for (int j = 0; j < n; ++j) {
    const auto& bd = bounds[j];
    if (bd.lo) {
      vmap[j] = {ns++, -1, *bd.lo, 1};
      if (bd.hi) ++extra_rows;
    } else if (bd.hi) {
      vmap[j] = {ns++, -1, *bd.hi, -1};
    } else {
      vmap[j].pos = ns++;
      vmap[j].neg = ns++;
      vmap[j].shift = 0;
      vmap[j].sign = 1;
    }
  }

  const int rows_total = m + extra_rows;
  RatMat sa(rows_total, ns);
  RatVec sb(rows_total, Rat(0));
  for (int i = 0; i < m; ++i) {
    Rat rhs = b[i];
    for (int j = 0; j < n; ++j) {
      const Rat& a = A(i, j);
      if (a == 0) continue;
      rhs -= a * vmap[j].shift;
      sa(i, vmap[j].pos) += a * Rat(vmap[j].sign);
      if (vmap[j].neg >= 0) sa(i, vmap[j].neg) -= a;
    }
    sb[i] = rhs;
  }
  {
    int r = m;
    for (int j = 0; j < n; ++j)
      if (bounds[j].lo && bounds[j].hi) {
        // s + slack = hi - lo; reuse a fresh slack column appended below.
        sa(r, vmap[j].pos) = 1;
        sb[r] = *bounds[j].hi - *bounds[j].lo;
        ++r;
      }
  }
  // Append one slack column per two-sided bound row.
  {
    RatMat sa2(rows_total, ns + extra_rows);
    for (int i = 0; i < rows_total; ++i)
      for (int j = 0; j < ns; ++j) sa2(i, j) = sa(i, j);
    int k = 0;
    for (int r = m; r < rows_total; ++r) sa2(r, ns + k++) = 1;
    sa = std::move(sa2);
  }
  const int nvars = ns + extra_rows;

  // Standard-form objective (always minimized internally).
  RatVec sc(nvars, Rat(0));
  Rat cshift(0);
  const Rat sense_mul = sense == LpSense::Maximize ? Rat(-1) : Rat(1);
  for (int j = 0; j < n; ++j) {
    Rat cj = sense_mul * c[j];
    if (cj == 0) continue;
    cshift += cj * vmap[j].shift;
    sc[vmap[j].pos] += cj * Rat(vmap[j].sign);
    if (vmap[j].neg >= 0) sc[vmap[j].neg] -= cj;
  }

  // --- Phase 1: artificial basis, minimize the artificial sum.
  Tableau tb;
  tb.t = RatMat(rows_total, nvars + rows_total + 1);
  tb.obj.assign(nvars + rows_total, Rat(0));
  tb.basis.resize(rows_total);
  std::vector<int> row_sign(rows_total, 1);
  for (int i = 0; i < rows_total; ++i) {
    int s = sb[i] < 0 ? -1 : 1;
    row_sign[i] = s;
    for (int j = 0; j < nvars; ++j) tb.t(i, j) = sa(i, j) * Rat(s);
    tb.t(i, nvars + i) = 1;
    tb.t(i, nvars + rows_total) = sb[i] * Rat(s);
    tb.basis[i] = nvars + i;
  }
  for (int j = 0; j < nvars; ++j) {
    Rat colsum(0);
    for (int i = 0; i < rows_total; ++i) colsum += tb.t(i, j);
    tb.obj[j] = -colsum;  // reduced cost under unit artificial costs
  }
  tb.objval = 0;
  for (int i = 0; i < rows_total; ++i) tb.objval += tb.rhs(i);

  std::vector<bool> allowed(nvars + rows_total, true);
  bool unbounded = false;
  while (tb.step(allowed, &unbounded)) {
  }
  if (unbounded) throw std::runtime_error("lp_solve: phase-1 objective reported unbounded");
  if (tb.objval != 0) return {LpStatus::Infeasible, {}, Rat(0), {}};

  // Drive basic artificials out where possible; rows that cannot pivot are
  // redundant and stay with a zero-valued artificial.
  for (int i = 0; i < rows_total; ++i) {
    if (tb.basis[i] < nvars) continue;
    for (int j = 0; j < nvars; ++j)
      if (tb.t(i, j) != 0) {
        tb.pivot(i, j);
        break;
      }
  }

  // --- Phase 2: real objective, artificial columns barred from entering.
  for (int j = 0; j < rows_total; ++j) allowed[nvars + j] = false;
  tb.obj.assign(nvars + rows_total, Rat(0));
  for (int j = 0; j < nvars + rows_total; ++j) {
    Rat rc = j < nvars ? sc[j] : Rat(0);
    for (int i = 0; i < rows_total; ++i) {
      int bcol = tb.basis[i];
      Rat cb = bcol < nvars ? sc[bcol] : Rat(0);
      if (cb != 0) rc -= cb * tb.t(i, j);
    }
    tb.obj[j] = rc;
  }
  tb.objval = 0;
  for (int i = 0; i < rows_total; ++i) {
    int bcol = tb.basis[i];
    if (bcol < nvars && sc[bcol] != 0) tb.objval += sc[bcol] * tb.rhs(i);
  }
  while (tb.step(allowed, &unbounded)) {
  }
  if (unbounded) return {LpStatus::Unbounded, {}, Rat(0), {}};

  // Extract the point.
  RatVec s(nvars, Rat(0));
  for (int i = 0; i < rows_total; ++i)
    if (tb.basis[i] < nvars) s[tb.basis[i]] = tb.rhs(i);
  RatVec x(n);
  for (int j = 0; j < n; ++j) {
    x[j] = vmap[j].shift + Rat(vmap[j].sign) * s[vmap[j].pos];
    if (vmap[j].neg >= 0) x[j] -= s[vmap[j].neg];
  }
  Rat value(0);
  for (int j = 0; j < n; ++j) value += c[j] * x[j];

  // Row duals from the reduced costs of the artificial columns: for the
  // minimized problem, rc(artificial_i) = -sign_i * y_i.
  RatVec duals(m);
  for (int i = 0; i < m; ++i) {
    Rat y = -tb.obj[nvars + i] * Rat(row_sign[i]);
    duals[i] = sense == LpSense::Maximize ? Rat(-y) : y;
  }
  return {LpStatus::Optimal, std::move(x), std::move(value), std::move(duals)};
}

}  // namespace conekit
