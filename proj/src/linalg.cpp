#include "conekit/linalg.hpp"

namespace conekit {

std::optional<RatVec> solve_linear(const RatMat& A, const RatVec& b) {
  if (!A.is_square() || static_cast<size_t>(A.rows()) != b.size())
    throw std::invalid_argument("solve_linear: shape mismatch");
  const int n = A.rows();
  RatMat m(n, n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = A(i, j);
    m(i, n) = b[i];
  }
  auto pivots = rref(m, n);
  if (static_cast<int>(pivots.size()) < n) {
    // Square system with deficient rank: singular (consistent or not).
    return std::nullopt;
  }
  RatVec x(n);
  for (int r = 0; r < n; ++r) x[pivots[r]] = m(r, n);
  return x;
}

std::vector<int> rref(RatMat& m, int pivot_cols_limit) {
  const int rows = m.rows();
  const int cols = m.cols();
  const int limit = pivot_cols_limit < 0 ? cols : pivot_cols_limit;
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < limit && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (m(i, c) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < cols; ++j) std::swap(m(pr, j), m(r, j));
    Rat inv = m(r, c);
    for (int j = c; j < cols; ++j) m(r, j) /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (int j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(RatMat m) { return static_cast<int>(rref(m).size()); }

std::vector<RatVec> nullspace(const RatMat& A) {
  RatMat m = A;
  auto pivots = rref(m);
  const int n = A.cols();
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    RatVec v(n, Rat(0));
    v[c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(static_cast<int>(r), c);
    basis.push_back(std::move(v));
  }
  return basis;
}

RatVec primitive(const RatVec& v, bool fix_sign) {
  mpz_class den_lcm(1), num_gcd(0);
  for (const auto& x : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
  RatVec w(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    Rat s = v[i] * Rat(den_lcm);
    s.canonicalize();
    w[i] = s;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), s.get_num().get_mpz_t());
  }
  if (num_gcd == 0) return w;  // zero vector
  int lead_sign = 0;
  for (const auto& x : w)
    if (x != 0) {
      lead_sign = rat_sign(x);
      break;
    }
  Rat g(num_gcd);
  if (fix_sign && lead_sign < 0) g = -g;
  for (auto& x : w) {
    x /= g;
    x.canonicalize();
  }
  return w;
}

}  // namespace conekit
