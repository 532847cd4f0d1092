#include <vector>

#include "doctest.h"

#include "conekit/linalg.hpp"
#include "conekit/matrix.hpp"
#include "conekit/rng.hpp"

using namespace conekit;

namespace {

RatMat random_int_matrix(int rows, int cols, SplitMix64& rng) {
  RatMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = static_cast<long>(rng.next_below(11)) - 5;
  return m;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("solve_linear on a known system") {
  RatMat a(2, 2);
  a(0, 0) = 2;
  a(0, 1) = 1;
  a(1, 0) = 1;
  a(1, 1) = 3;
  const auto x = solve_linear(a, {rat(5), rat(10)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 1);
  CHECK((*x)[1] == 3);
}

TEST_CASE("solve_linear detects singular systems") {
  RatMat a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 2;
  a(1, 1) = 4;
  CHECK_FALSE(solve_linear(a, {rat(1), rat(2)}).has_value());
}

TEST_CASE("solve_linear round trips random nonsingular systems") {
  SplitMix64 rng(41);
  int solved = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const RatMat a = random_int_matrix(4, 4, rng);
    RatVec b(4);
    for (auto& x : b) x = static_cast<long>(rng.next_below(9)) - 4;
    const auto x = solve_linear(a, b);
    if (!x.has_value()) continue;  // singular draw
    ++solved;
    const RatMat ax = a * RatMat::col(*x);
    for (int i = 0; i < 4; ++i) CHECK(ax(i, 0) == b[static_cast<std::size_t>(i)]);
  }
  CHECK(solved > 20);
}

TEST_CASE("rref reduces and reports pivots") {
  RatMat m(3, 4);
  // rows: x + y = 1, 2x + 2y = 2 (dependent), y + z = 2, augmented column last.
  m(0, 0) = 1;
  m(0, 1) = 1;
  m(0, 3) = 1;
  m(1, 0) = 2;
  m(1, 1) = 2;
  m(1, 3) = 2;
  m(2, 1) = 1;
  m(2, 2) = 1;
  m(2, 3) = 2;
  const auto pivots = rref(m, 3);
  CHECK(pivots == std::vector<int>{0, 1});
  // Row echelon: x - z = -1, y + z = 2, zero row.
  CHECK(m(0, 0) == 1);
  CHECK(m(0, 2) == -1);
  CHECK(m(0, 3) == -1);
  CHECK(m(1, 1) == 1);
  CHECK(m(1, 2) == 1);
  CHECK(m(1, 3) == 2);
  for (int j = 0; j < 4; ++j) CHECK(m(2, j) == 0);

  // rref is idempotent.
  RatMat again = m;
  rref(again, 3);
  CHECK(again == m);
}

TEST_CASE("rank of products and stacked matrices") {
  SplitMix64 rng(7);
  const RatMat a = random_int_matrix(4, 2, rng);
  const RatMat b = random_int_matrix(2, 4, rng);
  CHECK(rank(a * b) <= 2);
  CHECK(rank(RatMat::identity(5)) == 5);
  CHECK(rank(RatMat(3, 3)) == 0);
}

TEST_CASE("nullspace vectors satisfy A x = 0 and span the right dimension") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const RatMat a = random_int_matrix(3, 5, rng);
    const auto basis = nullspace(a);
    CHECK(static_cast<int>(basis.size()) == 5 - rank(a));
    for (const auto& v : basis) {
      const RatMat av = a * RatMat::col(v);
      for (int i = 0; i < av.rows(); ++i) CHECK(av(i, 0) == 0);
    }
    // Linear independence: the basis matrix has full column rank.
    RatMat bm(5, static_cast<int>(basis.size()));
    for (int j = 0; j < bm.cols(); ++j)
      for (int i = 0; i < 5; ++i) bm(i, j) = basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    if (!basis.empty()) CHECK(rank(bm) == bm.cols());
  }
}

TEST_CASE("primitive clears denominators and gcds") {
  const RatVec v = {rat(2, 3), rat(-4, 3)};
  CHECK(primitive(v, false) == RatVec{rat(1), rat(-2)});
  CHECK(primitive({rat(-2, 5), rat(4, 5)}, true) == RatVec{rat(1), rat(-2)});
  CHECK(primitive({rat(-2, 5), rat(4, 5)}, false) == RatVec{rat(-1), rat(2)});
  const RatVec zero = {Rat(0), Rat(0)};
  CHECK(primitive(zero, true) == zero);
  CHECK(primitive({rat(6), rat(9), rat(12)}, false) == RatVec{rat(2), rat(3), rat(4)});
}

}  // TEST_SUITE
