#include <stdexcept>
#include <utility>
#include <vector>

#include "doctest.h"

#include "conekit/matrix.hpp"

using namespace conekit;

TEST_SUITE("matrix") {

TEST_CASE("construction, identity, transpose, product") {
  RatMat a(2, 3);
  a(0, 0) = 1;
  a(0, 2) = rat(1, 2);
  a(1, 1) = -2;
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 3);
  CHECK(a.transpose()(2, 0) == rat(1, 2));
  CHECK(a.transpose().transpose() == a);

  const RatMat i3 = RatMat::identity(3);
  CHECK(a * i3 == a);
  CHECK(RatMat::identity(2) * a == a);

  const RatMat v = RatMat::col({rat(1), rat(0), rat(2)});
  const RatMat av = a * v;
  CHECK(av.rows() == 2);
  CHECK(av.cols() == 1);
  CHECK(av(0, 0) == 2);  // 1*1 + 1/2*2
  CHECK(av(1, 0) == 0);

  CHECK_THROWS_AS(a * a, std::invalid_argument);
  CHECK_THROWS_AS(a + v, std::invalid_argument);
}

TEST_CASE("arithmetic is exact and shape-checked") {
  RatMat a(2, 2), b(2, 2);
  a(0, 0) = rat(1, 3);
  b(0, 0) = rat(1, 6);
  CHECK((a + b)(0, 0) == rat(1, 2));
  CHECK((a - b)(0, 0) == rat(1, 6));
  CHECK((a * rat(3))(0, 0) == 1);
}

TEST_CASE("frobenius pairing") {
  RatMat a(2, 2), b(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 2;
  a(1, 1) = 3;
  b(0, 0) = rat(1, 2);
  b(0, 1) = -1;
  b(1, 0) = -1;
  b(1, 1) = 1;
  CHECK(frobenius(a, b) == rat(1, 2) - 2 - 2 + 3);
  const RatMat u = RatMat::col({rat(1), rat(2)});
  const RatMat v = RatMat::col({rat(3), rat(4)});
  CHECK(frobenius(u, v) == 11);
}

TEST_CASE("symmetry predicate") {
  RatMat m(2, 2);
  m(0, 1) = 1;
  CHECK_FALSE(m.is_symmetric());
  m(1, 0) = 1;
  CHECK(m.is_symmetric());
  CHECK_FALSE(RatMat(2, 3).is_square());
}

TEST_CASE("sym_coords order is diagonal-first then lexicographic") {
  const auto c3 = sym_coords(3);
  const std::vector<std::pair<int, int>> expect = {{0, 0}, {1, 1}, {2, 2},
                                                   {0, 1}, {0, 2}, {1, 2}};
  CHECK(c3 == expect);
  CHECK(sym_dim(3) == 6);
  CHECK(sym_dim(1) == 1);
  CHECK(static_cast<int>(sym_coords(5).size()) == sym_dim(5));
}

TEST_CASE("sym_vec reads the upper triangle in sym_coords order") {
  RatMat m(3, 3);
  const auto coords = sym_coords(3);
  for (std::size_t t = 0; t < coords.size(); ++t) {
    m(coords[t].first, coords[t].second) = static_cast<long>(t + 1);
    m(coords[t].second, coords[t].first) = static_cast<long>(t + 1);
  }
  const RatVec v = sym_vec(m);
  REQUIRE(v.size() == coords.size());
  for (std::size_t t = 0; t < v.size(); ++t) CHECK(v[t] == static_cast<long>(t + 1));
}

TEST_CASE("double conversion round trips on dyadics") {
  RatMat m(2, 2);
  m(0, 0) = rat(1, 4);
  m(0, 1) = rat(-3, 8);
  m(1, 0) = 5;
  m(1, 1) = rat(7, 2);
  CHECK(to_rational(to_double(m)) == m);
  const RatVec v = {rat(1, 2), rat(-9, 16)};
  CHECK(to_rational(to_double(v)) == v);
}

TEST_CASE("max_abs_entry") {
  RatMat m(2, 2);
  m(0, 1) = rat(-7, 2);
  m(1, 0) = 3;
  CHECK(max_abs_entry(m) == rat(7, 2));
  DMat d(1, 2);
  d(0, 0) = -4.5;
  d(0, 1) = 2.0;
  CHECK(max_abs_entry(d) == 4.5);
}

}  // TEST_SUITE
