#include <stdexcept>

#include "doctest.h"

#include "conekit/rational.hpp"

using namespace conekit;

TEST_SUITE("rational") {

TEST_CASE("rat canonicalizes and rejects zero denominators") {
  CHECK(rat(2, 4) == rat(1, 2));
  CHECK(rat(-2, -4) == rat(1, 2));
  CHECK(rat(2, -4) == rat(-1, 2));
  CHECK(rat(0, 7) == 0);
  CHECK_THROWS_AS(rat(1, 0), std::invalid_argument);
}

TEST_CASE("string round trip") {
  CHECK(rat_to_string(rat(5)) == "5");
  CHECK(rat_to_string(rat(-5)) == "-5");
  CHECK(rat_to_string(rat(1, 3)) == "1/3");
  CHECK(rat_to_string(rat(-1, 3)) == "-1/3");
  for (long n = -12; n <= 12; ++n) {
    for (long d = 1; d <= 9; ++d) {
      const Rat q = rat(n, d);
      CHECK(rat_from_string(rat_to_string(q)) == q);
    }
  }
  CHECK(rat_from_string("6/4") == rat(3, 2));
  CHECK(rat_from_string("-6/-4") == rat(3, 2));
}

TEST_CASE("malformed strings throw") {
  CHECK_THROWS(rat_from_string(""));
  CHECK_THROWS(rat_from_string("a"));
  CHECK_THROWS(rat_from_string("1/"));
  CHECK_THROWS(rat_from_string("/2"));
  CHECK_THROWS(rat_from_string("1/0"));
  CHECK_THROWS(rat_from_string("1.5"));
  CHECK_THROWS(rat_from_string("1 2"));
}

TEST_CASE("doubles convert exactly") {
  CHECK(rat_from_double(0.5) == rat(1, 2));
  CHECK(rat_from_double(-0.75) == rat(-3, 4));
  CHECK(rat_from_double(3.0) == 3);
  // 0.1 is not 1/10 in binary; conversion must capture the true dyadic.
  const Rat tenth = rat_from_double(0.1);
  CHECK(tenth != rat(1, 10));
  CHECK(to_double(tenth) == 0.1);
  for (double x : {1e-17, 123456.789, -0.3, 2.2250738585072014e-308}) {
    CHECK(to_double(rat_from_double(x)) == x);
  }
}

TEST_CASE("abs and sign") {
  CHECK(rat_abs(rat(-3, 7)) == rat(3, 7));
  CHECK(rat_abs(rat(3, 7)) == rat(3, 7));
  CHECK(rat_sign(rat(-1, 9)) == -1);
  CHECK(rat_sign(Rat(0)) == 0);
  CHECK(rat_sign(rat(7)) == 1);
}

}  // TEST_SUITE
