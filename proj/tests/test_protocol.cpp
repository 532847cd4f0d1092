#include <cmath>
#include <vector>

#include "doctest.h"

#include "conekit/matrix.hpp"
#include "conekit/polytopes.hpp"
#include "conekit/protocol.hpp"
#include "conekit/rng.hpp"

using namespace conekit;

namespace {

RatMat ones_vec(int n) {
  RatMat u(n, 1);
  for (int i = 0; i < n; ++i) u(i, 0) = 1;
  return u;
}

ConeFactorization trivial_of(const RatMat& s) {
  const auto t = trivial_orthant_factorization(s);
  return ConeFactorization{t.cone, t.t, t.u, {}, {}};
}

RatMat random_nonneg(int rows, int cols, SplitMix64& rng) {
  RatMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rat(static_cast<long>(rng.next_below(7)), 2);
  return m;
}

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("factorization matrix and validation") {
  RatMat s(2, 2);
  s(0, 0) = 1;
  s(0, 1) = 2;
  s(1, 0) = 0;
  s(1, 1) = rat(1, 2);
  const auto f = trivial_of(s);
  CHECK(factorization_matrix(f) == s);
  CHECK_NOTHROW(validate_factorization(f));

  auto broken = f;
  broken.states[0](0, 0) = -1;
  CHECK_THROWS(validate_factorization(broken));
}

TEST_CASE("protocols compiled from factorizations reproduce the matrix exactly") {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const RatMat c = random_nonneg(3, 4, rng);
    const auto f = trivial_of(c);
    const auto p = protocol_from_factorization(f, ones_vec(f.cone.ambient));
    CHECK_NOTHROW(validate_protocol(p));
    CHECK(exact_expectation(p) == c);

    // Round trip back to a factorization with the same matrix.
    const auto back = factorization_from_protocol(p);
    CHECK(factorization_matrix(back) == c);
  }
}

TEST_CASE("compiled protocol normalizes states and scales outputs") {
  RatMat c(2, 2);
  c(0, 0) = 4;
  c(0, 1) = 2;
  c(1, 0) = 1;
  c(1, 1) = 0;
  const auto f = trivial_of(c);
  const auto p = protocol_from_factorization(f, ones_vec(f.cone.ambient));
  // lambda = max row sum of the trivial states = 6.
  CHECK(p.lambda == 6);
  REQUIRE(p.proceed.size() == 2);
  CHECK(p.proceed[0] == 1);
  CHECK(p.proceed[1] == rat(1, 6));
  for (const auto& omega : p.states) {
    Rat total(0);
    for (int i = 0; i < omega.rows(); ++i) total += omega(i, 0);
    CHECK(total == 1);  // normalized against the all-ones unit
  }
  // Outputs are (0, mu) per response.
  for (const auto& out : p.outputs) {
    REQUIRE(out.size() == 2);
    CHECK(out[0] == 0);
    CHECK(out[1] == p.mu);
  }
  CHECK(exact_expectation(p) == c);
}

TEST_CASE("multi-outcome responses recombine through outputs") {
  // Hand-built three-outcome protocol on the classical 2-dimensional cone.
  OneWayProtocol p;
  p.cone = orthant_cone(2);
  p.unit = ones_vec(2);
  p.states = {RatMat::col({rat(1, 2), rat(1, 2)}), RatMat::col({rat(1), rat(0)})};
  p.proceed = {rat(1), rat(1)};
  Measurement m;
  m.effects = {RatMat::col({rat(1, 2), rat(0)}), RatMat::col({rat(1, 2), rat(1, 2)}),
               RatMat::col({rat(0), rat(1, 2)})};
  p.measurements = {m};
  p.outputs = {{rat(0), rat(2), rat(5)}};
  CHECK_NOTHROW(validate_protocol(p));

  // E(x, 0) = 2 <ω, e_1> + 5 <ω, e_2>.
  const RatMat e = exact_expectation(p);
  CHECK(e(0, 0) == 2 * rat(1, 2) + 5 * rat(1, 4));
  CHECK(e(1, 0) == 2 * rat(1, 2) + 5 * rat(0));

  // The reverse factorization bakes outputs into the response element:
  // r = 0*e_0 + 2*e_1 + 5*e_2.
  const auto back = factorization_from_protocol(p);
  REQUIRE(back.responses.size() == 1);
  CHECK(back.responses[0] == RatMat::col({rat(1), rat(7, 2)}));
  CHECK(factorization_matrix(back) == e);
}

TEST_CASE("validation rejects malformed protocols") {
  OneWayProtocol p;
  p.cone = orthant_cone(2);
  p.unit = ones_vec(2);
  p.states = {RatMat::col({rat(1, 2), rat(1, 2)})};
  p.proceed = {rat(2)};  // probability above 1
  Measurement m;
  m.effects = {RatMat::col({rat(1), rat(0)}), RatMat::col({rat(0), rat(1)})};
  p.measurements = {m};
  p.outputs = {{rat(0), rat(1)}};
  CHECK_THROWS(validate_protocol(p));

  p.proceed = {rat(1)};
  p.outputs = {{rat(0), rat(-1)}};
  CHECK_THROWS(validate_protocol(p));
  p.outputs = {{rat(0), rat(1)}};
  CHECK_NOTHROW(validate_protocol(p));
}

TEST_CASE("sampling is deterministic given the generator") {
  const auto f = trivial_of(slack_matrix(correlation_polytope(2),
                                         facet_enum(correlation_polytope(2))));
  const auto p = protocol_from_factorization(f, ones_vec(f.cone.ambient));
  SplitMix64 g1(9), g2(9);
  for (int i = 0; i < 50; ++i) CHECK(sample(p, 1, 2, g1) == sample(p, 1, 2, g2));
}

TEST_CASE("simulation matches the exact expectation within Monte Carlo error") {
  RatMat c(2, 3);
  c(0, 0) = rat(1, 2);
  c(0, 1) = 2;
  c(0, 2) = 0;
  c(1, 0) = 1;
  c(1, 1) = rat(3, 4);
  c(1, 2) = rat(1, 4);
  const auto f = trivial_of(c);
  const auto p = protocol_from_factorization(f, ones_vec(f.cone.ambient));
  const std::uint64_t samples = 200000;
  const auto r = simulate(p, samples, 2024);
  CHECK(r.exact == exact_expectation(p));
  CHECK(r.samples == samples);

  // Per-cell outcomes live in {0, mu * lambda-scaled values}; the span bounds
  // the standard deviation, so 5 sigma is a comfortable determinism-free gate.
  const double span = to_double(p.mu);
  const double sigma = span / 2.0 / std::sqrt(static_cast<double>(samples));
  for (int x = 0; x < c.rows(); ++x)
    for (int y = 0; y < c.cols(); ++y)
      CHECK(std::abs(r.empirical(x, y) - to_double(r.exact(x, y))) <= 5.0 * sigma);

  // Same seed, same stream.
  const auto again = simulate(p, samples, 2024);
  for (int x = 0; x < c.rows(); ++x)
    for (int y = 0; y < c.cols(); ++y) CHECK(again.empirical(x, y) == r.empirical(x, y));
}

TEST_CASE("psd factorizations compile with spectra-based scaling") {
  // States and responses in the psd cone: C_xy = <T_x, U_y> with T, U psd.
  ConeFactorization f;
  f.cone = psd_cone(2);
  RatMat t0(2, 2), t1(2, 2), u0(2, 2), u1(2, 2);
  t0(0, 0) = 1;
  t1(0, 0) = t1(1, 1) = rat(1, 2);
  t1(0, 1) = t1(1, 0) = rat(1, 2);
  u0(1, 1) = 1;
  u1(0, 0) = u1(1, 1) = 1;
  f.states = {t0, t1};
  f.responses = {u0, u1};
  CHECK_NOTHROW(validate_factorization(f));
  const auto p = protocol_from_factorization(f, RatMat::identity(2));
  CHECK_NOTHROW(validate_protocol(p));
  CHECK(exact_expectation(p) == factorization_matrix(f));
}

}  // TEST_SUITE
