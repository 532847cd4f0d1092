#include <optional>
#include <vector>

#include "doctest.h"

#include "conekit/linalg.hpp"
#include "conekit/lp.hpp"
#include "conekit/rng.hpp"

using namespace conekit;

namespace {

// Independent oracle: enumerate every vertex of {A x = b, lo <= x <= hi}
// (basis columns + nonbasic variables pinned at a finite bound) and take the
// best objective. Exponential, but exact — usable for n <= 6.
std::optional<Rat> brute_force_optimum(const RatMat& a, const RatVec& b,
                                       const std::vector<LpBound>& bounds, const RatVec& c,
                                       LpSense sense) {
  const int m = a.rows(), n = a.cols();
  std::optional<Rat> best;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != m) continue;
    std::vector<int> basis, rest;
    for (int j = 0; j < n; ++j) (mask >> j & 1 ? basis : rest).push_back(j);
    // Every lo/hi choice for the nonbasic variables.
    for (int pick = 0; pick < (1 << rest.size()); ++pick) {
      RatVec x(static_cast<std::size_t>(n), Rat(0));
      bool finite = true;
      for (std::size_t r = 0; r < rest.size(); ++r) {
        const auto& bd = bounds[static_cast<std::size_t>(rest[r])];
        const auto& side = (pick >> r & 1) ? bd.hi : bd.lo;
        if (!side) {
          finite = false;
          break;
        }
        x[static_cast<std::size_t>(rest[r])] = *side;
      }
      if (!finite) continue;
      RatMat ab(m, m);
      RatVec rhs = b;
      for (int i = 0; i < m; ++i) {
        for (int k = 0; k < m; ++k) ab(i, k) = a(i, basis[static_cast<std::size_t>(k)]);
        for (int j : rest) rhs[static_cast<std::size_t>(i)] -= a(i, j) * x[static_cast<std::size_t>(j)];
      }
      const auto xb = solve_linear(ab, rhs);
      if (!xb) continue;
      bool feasible = true;
      for (int k = 0; k < m && feasible; ++k) {
        const auto& bd = bounds[static_cast<std::size_t>(basis[static_cast<std::size_t>(k)])];
        const Rat& v = (*xb)[static_cast<std::size_t>(k)];
        if (bd.lo && v < *bd.lo) feasible = false;
        if (bd.hi && v > *bd.hi) feasible = false;
      }
      if (!feasible) continue;
      for (int k = 0; k < m; ++k) x[static_cast<std::size_t>(basis[static_cast<std::size_t>(k)])] = (*xb)[static_cast<std::size_t>(k)];
      Rat value(0);
      for (int j = 0; j < n; ++j) value += c[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
      if (!best || (sense == LpSense::Minimize ? value < *best : value > *best)) best = value;
    }
  }
  return best;
}

RatVec random_vec(int n, long lo, long hi, SplitMix64& rng) {
  RatVec v(static_cast<std::size_t>(n));
  for (auto& x : v)
    x = static_cast<long>(rng.next_below(static_cast<std::uint64_t>(hi - lo + 1))) + lo;
  return v;
}

}  // namespace

TEST_SUITE("lp") {

TEST_CASE("known optima") {
  RatMat a(1, 2);
  a(0, 0) = 1;
  a(0, 1) = 1;
  const RatVec b = {rat(1)};
  const std::vector<LpBound> nn = {LpBound::nonneg(), LpBound::nonneg()};

  auto r = lp_solve(a, b, nn, {rat(2), rat(3)}, LpSense::Maximize);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == 3);
  CHECK(r.x == RatVec{rat(0), rat(1)});

  r = lp_solve(a, b, nn, {rat(2), rat(3)}, LpSense::Minimize);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == 2);
  CHECK(r.x == RatVec{rat(1), rat(0)});
}

TEST_CASE("interval bounds steer the optimum") {
  RatMat a(1, 2);
  a(0, 0) = 1;
  a(0, 1) = 1;
  const std::vector<LpBound> bounds = {LpBound::interval(rat(1), rat(3)),
                                       LpBound::interval(rat(0), rat(5))};
  const auto r = lp_solve(a, {rat(4)}, bounds, {rat(1), rat(-1)}, LpSense::Minimize);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == -2);  // x = 1, y = 3
  CHECK(r.x == RatVec{rat(1), rat(3)});
}

TEST_CASE("infeasible and unbounded are detected") {
  RatMat a(1, 2);
  a(0, 0) = 1;
  a(0, 1) = 1;
  const std::vector<LpBound> nn = {LpBound::nonneg(), LpBound::nonneg()};
  CHECK(lp_solve(a, {rat(-1)}, nn, {rat(1), rat(1)}, LpSense::Minimize).status ==
        LpStatus::Infeasible);

  RatMat d(1, 2);
  d(0, 0) = 1;
  d(0, 1) = -1;
  CHECK(lp_solve(d, {rat(0)}, nn, {rat(1), rat(0)}, LpSense::Maximize).status ==
        LpStatus::Unbounded);
  CHECK(lp_solve(d, {rat(0)}, nn, {rat(1), rat(0)}, LpSense::Minimize).status ==
        LpStatus::Optimal);
}

TEST_CASE("matches brute-force vertex enumeration on random bounded instances") {
  SplitMix64 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 25; ++trial) {
    RatMat a(2, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = static_cast<long>(rng.next_below(7)) - 3;
    // Feasible by construction: b = A x0 with x0 inside the box.
    const RatVec x0 = random_vec(4, 0, 2, rng);
    RatVec b(2, Rat(0));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j) b[static_cast<std::size_t>(i)] += a(i, j) * x0[static_cast<std::size_t>(j)];
    const std::vector<LpBound> bounds(4, LpBound::interval(rat(0), rat(3)));
    const RatVec c = random_vec(4, -5, 5, rng);
    for (LpSense sense : {LpSense::Minimize, LpSense::Maximize}) {
      const auto oracle = brute_force_optimum(a, b, bounds, c, sense);
      const auto r = lp_solve(a, b, bounds, c, sense);
      REQUIRE(r.status == LpStatus::Optimal);
      REQUIRE(oracle.has_value());
      CHECK(r.value == *oracle);
      ++checked;
    }
  }
  CHECK(checked == 50);
}

TEST_CASE("returned points are feasible basic solutions") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    RatMat a(2, 5);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 5; ++j) a(i, j) = static_cast<long>(rng.next_below(9)) - 4;
    const RatVec x0 = random_vec(5, 0, 2, rng);
    RatVec b(2, Rat(0));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 5; ++j) b[static_cast<std::size_t>(i)] += a(i, j) * x0[static_cast<std::size_t>(j)];
    const std::vector<LpBound> bounds(5, LpBound::interval(rat(0), rat(4)));
    const auto r = lp_solve(a, b, bounds, random_vec(5, -3, 3, rng), LpSense::Minimize);
    REQUIRE(r.status == LpStatus::Optimal);
    RatVec ax(2, Rat(0));
    int strictly_inside = 0;
    for (int j = 0; j < 5; ++j) {
      const Rat& v = r.x[static_cast<std::size_t>(j)];
      CHECK(v >= 0);
      CHECK(v <= 4);
      if (v > 0 && v < 4) ++strictly_inside;
      for (int i = 0; i < 2; ++i) ax[static_cast<std::size_t>(i)] += a(i, j) * v;
    }
    CHECK(ax == b);
    CHECK(strictly_inside <= 2);  // basicness: at most #rows off their bounds
  }
}

TEST_CASE("row duals certify the optimum for nonnegative-variable problems") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 15; ++trial) {
    RatMat a(2, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = static_cast<long>(rng.next_below(7)) - 3;
    const RatVec x0 = random_vec(4, 0, 3, rng);
    RatVec b(2, Rat(0));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j) b[static_cast<std::size_t>(i)] += a(i, j) * x0[static_cast<std::size_t>(j)];
    const std::vector<LpBound> nn(4, LpBound::nonneg());

    // Minimize with c >= 0: bounded below. Strong duality plus dual
    // feasibility A^T y <= c must hold exactly.
    const RatVec cmin = random_vec(4, 0, 5, rng);
    const auto rmin = lp_solve(a, b, nn, cmin, LpSense::Minimize);
    REQUIRE(rmin.status == LpStatus::Optimal);
    REQUIRE(rmin.row_duals.size() == 2);
    Rat by(0);
    for (int i = 0; i < 2; ++i) by += b[static_cast<std::size_t>(i)] * rmin.row_duals[static_cast<std::size_t>(i)];
    CHECK(by == rmin.value);
    for (int j = 0; j < 4; ++j) {
      Rat aty(0);
      for (int i = 0; i < 2; ++i) aty += a(i, j) * rmin.row_duals[static_cast<std::size_t>(i)];
      CHECK(aty <= cmin[static_cast<std::size_t>(j)]);
    }

    // Maximize with c <= 0: bounded above; duals satisfy A^T y >= c.
    RatVec cmax = random_vec(4, -5, 0, rng);
    const auto rmax = lp_solve(a, b, nn, cmax, LpSense::Maximize);
    REQUIRE(rmax.status == LpStatus::Optimal);
    by = 0;
    for (int i = 0; i < 2; ++i) by += b[static_cast<std::size_t>(i)] * rmax.row_duals[static_cast<std::size_t>(i)];
    CHECK(by == rmax.value);
    for (int j = 0; j < 4; ++j) {
      Rat aty(0);
      for (int i = 0; i < 2; ++i) aty += a(i, j) * rmax.row_duals[static_cast<std::size_t>(i)];
      CHECK(aty >= cmax[static_cast<std::size_t>(j)]);
    }
  }
}

}  // TEST_SUITE
