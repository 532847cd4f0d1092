#include <set>
#include <vector>

#include "doctest.h"

#include "conekit/linalg.hpp"
#include "conekit/matrix.hpp"
#include "conekit/polytopes.hpp"
#include "conekit/rng.hpp"

using namespace conekit;

namespace {

// H-representation validity oracle, independent of the double-description
// internals: every vertex satisfies every row exactly, and every inequality
// is supporting (tight at some vertex).
void check_hrep_against_vertices(const ZeroOnePolytope& p, const HRep& h) {
  for (int f = 0; f < h.a.rows(); ++f) {
    Rat min_slack;
    bool have = false;
    for (const auto& v : p.vertices) {
      Rat s = -h.b[static_cast<std::size_t>(f)];
      for (int j = 0; j < h.a.cols(); ++j) s += h.a(f, j) * v[static_cast<std::size_t>(j)];
      CHECK(s >= 0);
      if (!have || s < min_slack) {
        min_slack = s;
        have = true;
      }
    }
    REQUIRE(have);
    CHECK(min_slack == 0);
  }
  for (int e = 0; e < h.eq_a.rows(); ++e) {
    for (const auto& v : p.vertices) {
      Rat s = -h.eq_b[static_cast<std::size_t>(e)];
      for (int j = 0; j < h.eq_a.cols(); ++j) s += h.eq_a(e, j) * v[static_cast<std::size_t>(j)];
      CHECK(s == 0);
    }
  }
}

int affine_dim(const ZeroOnePolytope& p) {
  if (p.vertices.size() <= 1) return 0;
  RatMat diffs(static_cast<int>(p.vertices.size()) - 1, p.dim);
  for (std::size_t v = 1; v < p.vertices.size(); ++v)
    for (int j = 0; j < p.dim; ++j)
      diffs(static_cast<int>(v) - 1, j) = p.vertices[v][static_cast<std::size_t>(j)] - p.vertices[0][static_cast<std::size_t>(j)];
  return rank(diffs);
}

RatVec rv(std::vector<long> xs) {
  RatVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_SUITE("polytopes") {

TEST_CASE("constructor validates") {
  CHECK_THROWS(make_zero_one_polytope(2, {}));
  CHECK_THROWS(make_zero_one_polytope(2, {rv({0, 2})}));
  CHECK_THROWS(make_zero_one_polytope(2, {rv({0, 1}), rv({0, 1})}));
  CHECK_THROWS(make_zero_one_polytope(2, {rv({0})}));
  CHECK_NOTHROW(make_zero_one_polytope(2, {rv({0, 1}), rv({1, 1})}));
}

TEST_CASE("correlation polytope vertices follow counting order") {
  const auto p = correlation_polytope(2);
  CHECK(p.dim == 3);
  REQUIRE(p.vertices.size() == 4);
  CHECK(p.vertices[0] == rv({0, 0, 0}));
  CHECK(p.vertices[1] == rv({1, 0, 0}));  // a = (1,0); coords (z11, z22, z12)
  CHECK(p.vertices[2] == rv({0, 1, 0}));
  CHECK(p.vertices[3] == rv({1, 1, 1}));
  CHECK_THROWS(correlation_polytope(0));
  CHECK_THROWS(correlation_polytope(6));
}

TEST_CASE("golden facets of the n=2 correlation polytope") {
  const auto p = correlation_polytope(2);
  const auto h = facet_enum(p);
  CHECK(h.eq_a.rows() == 0);
  REQUIRE(h.a.rows() == 4);
  REQUIRE(h.a.cols() == 3);
  // Rows sorted lexicographically; coordinates (z11, z22, z12).
  const std::vector<RatVec> rows = {rv({-1, -1, 1}), rv({0, 0, 1}), rv({0, 1, -1}),
                                    rv({1, 0, -1})};
  const RatVec rhs = rv({-1, 0, 0, 0});
  for (int f = 0; f < 4; ++f) {
    for (int j = 0; j < 3; ++j) CHECK(h.a(f, j) == rows[static_cast<std::size_t>(f)][static_cast<std::size_t>(j)]);
    CHECK(h.b[static_cast<std::size_t>(f)] == rhs[static_cast<std::size_t>(f)]);
  }

  // The slack matrix is a 4x4 permutation matrix.
  const RatMat s = slack_matrix(p, h);
  REQUIRE(s.rows() == 4);
  REQUIRE(s.cols() == 4);
  const int expected_col[4] = {0, 3, 2, 1};
  for (int v = 0; v < 4; ++v)
    for (int f = 0; f < 4; ++f) CHECK(s(v, f) == (f == expected_col[v] ? 1 : 0));
}

TEST_CASE("n=3 correlation polytope has sixteen supporting facets") {
  const auto p = correlation_polytope(3);
  CHECK(p.dim == 6);
  CHECK(p.vertices.size() == 8);
  const auto h = facet_enum(p);
  CHECK(h.eq_a.rows() == 0);
  CHECK(h.a.rows() == 16);
  check_hrep_against_vertices(p, h);
}

TEST_CASE("unit square") {
  const auto p = make_zero_one_polytope(2, {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})});
  const auto h = facet_enum(p);
  CHECK(h.eq_a.rows() == 0);
  CHECK(h.a.rows() == 4);
  check_hrep_against_vertices(p, h);
}

TEST_CASE("a single point yields only equalities") {
  const auto p = make_zero_one_polytope(2, {rv({1, 0})});
  const auto h = facet_enum(p);
  CHECK(h.a.rows() == 0);
  REQUIRE(h.eq_a.rows() == 2);
  // Reduced row echelon form: x = 1, y = 0.
  CHECK(h.eq_a(0, 0) == 1);
  CHECK(h.eq_a(0, 1) == 0);
  CHECK(h.eq_b[0] == 1);
  CHECK(h.eq_a(1, 0) == 0);
  CHECK(h.eq_a(1, 1) == 1);
  CHECK(h.eq_b[1] == 0);
}

TEST_CASE("segment facets and slack") {
  const auto p = make_zero_one_polytope(1, {rv({0}), rv({1})});
  const auto h = facet_enum(p);
  CHECK(h.eq_a.rows() == 0);
  REQUIRE(h.a.rows() == 2);
  CHECK(h.a(0, 0) == -1);  // -x >= -1, lexicographically first
  CHECK(h.b[0] == -1);
  CHECK(h.a(1, 0) == 1);  // x >= 0
  CHECK(h.b[1] == 0);
  const RatMat s = slack_matrix(p, h);
  CHECK(s(0, 0) == 1);
  CHECK(s(0, 1) == 0);
  CHECK(s(1, 0) == 0);
  CHECK(s(1, 1) == 1);
}

TEST_CASE("random 0/1 polytopes have valid irredundant descriptions") {
  SplitMix64 rng(61);
  for (int trial = 0; trial < 8; ++trial) {
    const int dim = 3 + static_cast<int>(rng.next_below(2));
    std::set<std::vector<long>> picked;
    const std::uint64_t want = 2 + rng.next_below(6);
    while (picked.size() < want) {
      std::vector<long> v(static_cast<std::size_t>(dim));
      for (auto& x : v) x = static_cast<long>(rng.next_below(2));
      picked.insert(v);
    }
    std::vector<RatVec> vertices;
    for (const auto& v : picked) vertices.push_back(rv(v));
    const auto p = make_zero_one_polytope(dim, vertices);
    const auto h = facet_enum(p);
    check_hrep_against_vertices(p, h);
    // The equality system pins exactly the lost dimensions.
    CHECK(h.eq_a.rows() == dim - affine_dim(p));
    // Slack agrees entrywise with direct evaluation.
    const RatMat s = slack_matrix(p, h);
    CHECK(s == slack_matrix_serial(p, h));
    for (int v = 0; v < s.rows(); ++v)
      for (int f = 0; f < s.cols(); ++f) {
        Rat expect = -h.b[static_cast<std::size_t>(f)];
        for (int j = 0; j < dim; ++j)
          expect += h.a(f, j) * p.vertices[static_cast<std::size_t>(v)][static_cast<std::size_t>(j)];
        CHECK(s(v, f) == expect);
      }
  }
}

TEST_CASE("slack_matrix rejects an inconsistent description") {
  const auto p = correlation_polytope(2);
  HRep h = facet_enum(p);
  h.b[0] += rat(1, 2);  // pushes one vertex to negative slack
  CHECK_THROWS(slack_matrix(p, h));
}

TEST_CASE("trivial orthant factorization verifies exactly") {
  const auto p = correlation_polytope(2);
  const auto h = facet_enum(p);
  const RatMat s = slack_matrix(p, h);
  const auto triv = trivial_orthant_factorization(s);
  CHECK(triv.cone == orthant_cone(4));
  const auto report = verify_cone_factorization(s, triv.t, triv.u, triv.cone, 0.0);
  CHECK(report.ok());
  CHECK(report.max_abs_err == 0);
  CHECK(report.not_member == 0);
  CHECK(report.unknown == 0);

  // A corrupted factor is flagged through the pairing error.
  auto bad = triv.t;
  bad[0](0, 0) += 1;
  const auto bad_report = verify_cone_factorization(s, bad, triv.u, triv.cone, 1e-9);
  CHECK_FALSE(bad_report.ok());
  CHECK(bad_report.max_abs_err == 1);
}

TEST_CASE("completely positive side needs certificates") {
  // <I, J> = 2: a 1x1 slack matrix factorized as CP state I, copositive
  // response J.
  RatMat s(1, 1);
  s(0, 0) = 2;
  RatMat j2(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) j2(r, c) = 1;
  const std::vector<RatMat> t = {RatMat::identity(2)};
  const std::vector<RatMat> u = {j2};
  const auto k = completely_positive_cone(2);

  const auto without = verify_cone_factorization(s, t, u, k, 1e-9);
  CHECK(without.pairing_ok);
  CHECK_FALSE(without.membership_ok);
  CHECK(without.unknown == 1);

  std::vector<CpCertificate> certs(1);
  certs[0].factors = {{rat(1), rat(0)}, {rat(0), rat(1)}};
  const auto with = verify_cone_factorization(s, t, u, k, 1e-9, &certs);
  CHECK(with.ok());
  CHECK(with.max_abs_err == 0);
}

}  // TEST_SUITE
