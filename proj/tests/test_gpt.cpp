#include <cmath>
#include <vector>

#include "doctest.h"

#include "conekit/eig.hpp"
#include "conekit/gpt.hpp"
#include "conekit/matrix.hpp"
#include "conekit/rng.hpp"

using namespace conekit;

namespace {

RatMat col(std::vector<Rat> xs) { return RatMat::col(xs); }

// Random exact orthant measurement: positive entries normalized columnwise
// so the effects sum to the all-ones unit.
Measurement random_orthant_measurement(int n, int k, SplitMix64& rng) {
  RatMat raw(k, n);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) raw(i, j) = static_cast<long>(rng.next_below(5));
  Measurement m;
  for (int i = 0; i < k; ++i) {
    RatMat e(n, 1);
    for (int j = 0; j < n; ++j) {
      Rat colsum(0);
      for (int r = 0; r < k; ++r) colsum += raw(r, j);
      if (colsum == 0) {
        raw(i, j) = 1;
        colsum = 1;
      }
      e(j, 0) = raw(i, j) / colsum;
    }
    m.effects.push_back(e);
  }
  return m;
}

// Random exact psd measurement: scaled rank-1 pieces plus a positive
// remainder effect that tops the sum up to the identity.
Measurement random_psd_measurement(int d, int k, SplitMix64& rng) {
  Measurement m;
  RatMat total(d, d);
  for (int i = 0; i + 1 < k; ++i) {
    RatVec v(static_cast<std::size_t>(d));
    Rat dot(0);
    for (auto& x : v) {
      x = static_cast<long>(rng.next_below(5)) - 2;
      dot += x * x;
    }
    if (dot == 0) {
      v[0] = 1;
      dot = 1;
    }
    RatMat e(d, d);
    const Rat scale = Rat(1) / (Rat(k) * dot);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) e(r, c) = v[static_cast<std::size_t>(r)] * v[static_cast<std::size_t>(c)] * scale;
    total = total + e;
    m.effects.push_back(e);
  }
  m.effects.push_back(RatMat::identity(d) - total);
  return m;
}

int nonzero_effects(const Measurement& m) {
  int count = 0;
  for (const auto& e : m.effects)
    if (max_abs_entry(e) != 0) ++count;
  return count;
}

double binary_entropy(double p) {
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

}  // namespace

TEST_SUITE("gpt") {

TEST_CASE("system construction enforces unit interiority") {
  CHECK_NOTHROW(make_gpt_system(orthant_cone(2), col({rat(1), rat(1)})));
  CHECK_THROWS(make_gpt_system(orthant_cone(2), col({rat(1), rat(0)})));
  CHECK_THROWS(make_gpt_system(copositive_cone(2), RatMat::identity(2)));

  const auto classical = default_gpt_system(ConeKind::Orthant, 3);
  CHECK(classical.unit == col({rat(1), rat(1), rat(1)}));
  CHECK(classical.gpt_dim() == 3);

  const auto qubit = default_gpt_system(ConeKind::Psd, 2);
  CHECK(qubit.unit == RatMat::identity(2));
  CHECK(qubit.gpt_dim() == 3);

  const auto cp_ones = default_gpt_system(ConeKind::CompletelyPositive, 2, CpUnit::AllOnes);
  CHECK(cp_ones.unit(0, 1) == 1);
}

TEST_CASE("outcome distributions") {
  const auto sys = default_gpt_system(ConeKind::Orthant, 2);
  Measurement canonical;
  canonical.effects = {col({rat(1), rat(0)}), col({rat(0), rat(1)})};
  CHECK(outcome_distribution(sys, col({rat(1), rat(0)}), canonical) ==
        std::vector<double>{1.0, 0.0});
  const auto dist = outcome_distribution(sys, col({rat(1, 4), rat(3, 4)}), canonical);
  CHECK(dist[0] == 0.25);
  CHECK(dist[1] == 0.75);

  const auto qubit = default_gpt_system(ConeKind::Psd, 2);
  RatMat e1(2, 2), e2(2, 2);
  e1(0, 0) = 1;
  e2(1, 1) = 1;
  Measurement proj;
  proj.effects = {e1, e2};
  CHECK(outcome_distribution(qubit, e1, proj) == std::vector<double>{1.0, 0.0});
}

TEST_CASE("measurement validation") {
  const auto sys = default_gpt_system(ConeKind::Orthant, 2);
  Measurement short_sum;
  short_sum.effects = {col({rat(1), rat(0)}), col({rat(0), rat(1, 2)})};
  CHECK_THROWS(validate_measurement(sys, short_sum));
  Measurement negative;
  negative.effects = {col({rat(2), rat(1)}), col({rat(-1), rat(0)})};
  CHECK_THROWS(validate_measurement(sys, negative));
}

TEST_CASE("refinement of the worked orthant measurement") {
  const auto sys = default_gpt_system(ConeKind::Orthant, 2);
  Measurement m;
  m.effects = {col({rat(1, 2), rat(0)}), col({rat(0), rat(1, 2)}),
               col({rat(1, 2), rat(1, 2)})};
  const auto r = refine_measurement(sys, m);
  REQUIRE(r.refined.effects.size() == 4);
  CHECK(r.refined.effects[0] == col({rat(1, 2), rat(0)}));
  CHECK(r.refined.effects[1] == col({rat(0), rat(1, 2)}));
  CHECK(r.refined.effects[2] == col({rat(1, 2), rat(0)}));
  CHECK(r.refined.effects[3] == col({rat(0), rat(1, 2)}));
  CHECK(r.outcome_map == std::vector<int>{0, 1, 2, 2});

  // Grouped sums recover the source exactly.
  std::vector<RatMat> grouped(m.effects.size(), RatMat(2, 1));
  for (std::size_t j = 0; j < r.refined.effects.size(); ++j)
    grouped[static_cast<std::size_t>(r.outcome_map[j])] =
        grouped[static_cast<std::size_t>(r.outcome_map[j])] + r.refined.effects[j];
  for (std::size_t i = 0; i < m.effects.size(); ++i) CHECK(grouped[i] == m.effects[i]);
}

TEST_CASE("refining an extremal measurement is the identity") {
  const auto sys = default_gpt_system(ConeKind::Orthant, 2);
  Measurement m;
  m.effects = {col({rat(1), rat(0)}), col({rat(0), rat(1)})};
  const auto r = refine_measurement(sys, m);
  CHECK(r.refined.effects == m.effects);
  CHECK(r.outcome_map == std::vector<int>{0, 1});
}

TEST_CASE("psd refinement splits mixed effects into rank-1 pieces") {
  const auto qubit = default_gpt_system(ConeKind::Psd, 2);
  Measurement m;
  m.effects = {RatMat::identity(2) * rat(1, 2), RatMat::identity(2) * rat(1, 2)};
  const auto r = refine_measurement(qubit, m);
  CHECK(r.refined.effects.size() == 4);
  for (const auto& e : r.refined.effects) {
    const DMat ed = to_double(e);
    CHECK(std::abs(ed(0, 0) * ed(1, 1) - ed(0, 1) * ed(1, 0)) <= 1e-9);  // rank 1
    CHECK(min_eigenvalue(ed) >= -1e-9);
  }
}

TEST_CASE("refinement preserves outcome distributions") {
  SplitMix64 rng(5);
  const auto sys = default_gpt_system(ConeKind::Orthant, 3);
  const Measurement m = random_orthant_measurement(3, 5, rng);
  const auto r = refine_measurement(sys, m);
  const RatMat omega = col({rat(1, 2), rat(1, 3), rat(1, 6)});
  const auto base = outcome_distribution(sys, omega, m);
  const auto fine = outcome_distribution(sys, omega, r.refined);
  std::vector<double> grouped(base.size(), 0.0);
  for (std::size_t j = 0; j < fine.size(); ++j)
    grouped[static_cast<std::size_t>(r.outcome_map[j])] += fine[j];
  for (std::size_t i = 0; i < base.size(); ++i)
    CHECK(grouped[i] == doctest::Approx(base[i]).epsilon(1e-10));
}

TEST_CASE("the worked peeling example decomposes into two half-weight parts") {
  const auto sys = default_gpt_system(ConeKind::Orthant, 2);
  Measurement m;
  m.effects = {col({rat(1, 2), rat(0)}), col({rat(0), rat(1, 2)}),
               col({rat(1, 2), rat(1, 2)})};
  const auto d = decompose_measurement(sys, m);
  REQUIRE(d.mixture.parts.size() == 2);
  CHECK(d.mixture.parts[0].weight == rat(1, 2));
  CHECK(d.mixture.parts[1].weight == rat(1, 2));
  const auto& m1 = d.mixture.parts[0].part.effects;
  const auto& m2 = d.mixture.parts[1].part.effects;
  REQUIRE(m1.size() == 4);
  CHECK(m1[0] == col({rat(1), rat(0)}));
  CHECK(m1[1] == col({rat(0), rat(1)}));
  CHECK(max_abs_entry(m1[2]) == 0);
  CHECK(max_abs_entry(m1[3]) == 0);
  CHECK(max_abs_entry(m2[0]) == 0);
  CHECK(max_abs_entry(m2[1]) == 0);
  CHECK(m2[2] == col({rat(1), rat(0)}));
  CHECK(m2[3] == col({rat(0), rat(1)}));
}

TEST_CASE("a measurement with at most n effects is returned whole") {
  const auto sys = default_gpt_system(ConeKind::Orthant, 2);
  Measurement m;
  m.effects = {col({rat(1), rat(0)}), col({rat(0), rat(1)})};
  const auto d = decompose_measurement(sys, m);
  REQUIRE(d.mixture.parts.size() == 1);
  CHECK(d.mixture.parts[0].weight == 1);
  CHECK(d.mixture.parts[0].part.effects == m.effects);
}

TEST_CASE("orthant decompositions satisfy every contract exactly") {
  SplitMix64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(4));           // 2..5
    const int k = n + 1 + static_cast<int>(rng.next_below(4));       // > n outcomes
    const auto sys = default_gpt_system(ConeKind::Orthant, n);
    const Measurement m = random_orthant_measurement(n, k, rng);
    validate_measurement(sys, m);
    const auto d = decompose_measurement(sys, m);

    Rat weight_sum(0);
    std::vector<RatMat> recombined(d.refined.effects.size(), RatMat(n, 1));
    for (const auto& part : d.mixture.parts) {
      CHECK(part.weight > 0);
      weight_sum += part.weight;
      CHECK(nonzero_effects(part.part) <= n);
      REQUIRE(part.part.effects.size() == d.refined.effects.size());
      for (std::size_t i = 0; i < part.part.effects.size(); ++i) {
        const auto& e = part.part.effects[i];
        int nonzero = 0;
        for (int j = 0; j < n; ++j)
          if (e(j, 0) != 0) ++nonzero;
        CHECK(nonzero <= 1);  // extremal in the orthant
        recombined[i] = recombined[i] + e * part.weight;
      }
    }
    CHECK(weight_sum == 1);
    for (std::size_t i = 0; i < recombined.size(); ++i)
      CHECK(recombined[i] == d.refined.effects[i]);
    CHECK(d.mixture.parts.size() <= d.refined.effects.size());
  }
}

TEST_CASE("psd decompositions recombine within float tolerance") {
  SplitMix64 rng(73);
  const auto sys = default_gpt_system(ConeKind::Psd, 2);
  for (int trial = 0; trial < 6; ++trial) {
    const Measurement m = random_psd_measurement(2, 5, rng);
    validate_measurement(sys, m);
    const auto d = decompose_measurement(sys, m);
    Rat weight_sum(0);
    std::vector<DMat> recombined(d.refined.effects.size(), DMat(2, 2));
    for (const auto& part : d.mixture.parts) {
      weight_sum += part.weight;
      CHECK(nonzero_effects(part.part) <= sys.gpt_dim());
      for (std::size_t i = 0; i < part.part.effects.size(); ++i)
        recombined[i] = recombined[i] + to_double(part.part.effects[i]) * to_double(part.weight);
    }
    CHECK(weight_sum == 1);
    for (std::size_t i = 0; i < recombined.size(); ++i) {
      const DMat expect = to_double(d.refined.effects[i]);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          CHECK(std::abs(recombined[i](r, c) - expect(r, c)) <= 1e-9);
    }
  }
}

TEST_CASE("mixture soundness at the distribution level") {
  SplitMix64 rng(79);
  const auto sys = default_gpt_system(ConeKind::Orthant, 3);
  const Measurement m = random_orthant_measurement(3, 6, rng);
  const auto d = decompose_measurement(sys, m);
  const RatMat omega = col({rat(1, 6), rat(1, 3), rat(1, 2)});
  const auto refined_dist = outcome_distribution(sys, omega, d.refined);
  std::vector<double> mixed(refined_dist.size(), 0.0);
  for (const auto& part : d.mixture.parts) {
    const auto dist = outcome_distribution(sys, omega, part.part);
    for (std::size_t i = 0; i < dist.size(); ++i) mixed[i] += to_double(part.weight) * dist[i];
  }
  for (std::size_t i = 0; i < mixed.size(); ++i)
    CHECK(mixed[i] == doctest::Approx(refined_dist[i]).epsilon(1e-10));
}

TEST_CASE("entropy and mutual information") {
  CHECK(entropy_bits({0.25, 0.25, 0.25, 0.25}) == 2.0);
  CHECK(entropy_bits({0.5, 0.5, 0.0}) == 1.0);
  CHECK(entropy_bits({1.0, 0.0}) == 0.0);

  DMat ident(2, 2);
  ident(0, 0) = ident(1, 1) = 1.0;
  CHECK(mutual_information({0.5, 0.5}, ident) == 1.0);

  DMat ident3(3, 3);
  for (int i = 0; i < 3; ++i) ident3(i, i) = 1.0;
  CHECK(mutual_information({1.0 / 3, 1.0 / 3, 1.0 / 3}, ident3) ==
        doctest::Approx(std::log2(3.0)).epsilon(1e-12));

  DMat constant(2, 2);
  constant(0, 0) = constant(1, 0) = 1.0;
  CHECK(mutual_information({0.5, 0.5}, constant) == 0.0);

  DMat bsc(2, 2);
  bsc(0, 0) = bsc(1, 1) = 0.89;
  bsc(0, 1) = bsc(1, 0) = 0.11;
  CHECK(mutual_information({0.5, 0.5}, bsc) ==
        doctest::Approx(1.0 - binary_entropy(0.11)).epsilon(1e-12));
}

TEST_CASE("canonical capacity values are exact") {
  const auto c2 = holevo_capacity_lower(default_gpt_system(ConeKind::Orthant, 2), 2, 2, 1, 0);
  CHECK(c2.information == 1.0);
  CHECK(capacity_bound(default_gpt_system(ConeKind::Orthant, 2)) == 1.0);

  const auto c4 = holevo_capacity_lower(default_gpt_system(ConeKind::Orthant, 4), 4, 4, 4, 7);
  CHECK(c4.information >= 2.0 - 1e-6);
  CHECK(c4.information <= 2.0 + 1e-9);

  const auto qubit = holevo_capacity_lower(default_gpt_system(ConeKind::Psd, 2), 2, 2, 2, 3);
  CHECK(qubit.information >= 1.0 - 1e-9);
  CHECK(qubit.information <= std::log2(3.0) + 1e-9);

  CHECK(capacity_bound(default_gpt_system(ConeKind::Psd, 2)) ==
        doctest::Approx(std::log2(3.0)).epsilon(1e-12));
  CHECK(capacity_bound(default_gpt_system(ConeKind::CompletelyPositive, 3)) ==
        doctest::Approx(std::log2(6.0)).epsilon(1e-12));
}

TEST_CASE("search is deterministic and never beats the dimension bound") {
  const auto sys = default_gpt_system(ConeKind::Orthant, 3);
  const auto a = holevo_capacity_lower(sys, 3, 3, 6, 42);
  const auto b = holevo_capacity_lower(sys, 3, 3, 6, 42);
  CHECK(a.information == b.information);
  CHECK(a.restart_index == b.restart_index);
  const double bound = capacity_bound(sys);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto r = holevo_capacity_lower(sys, 4, 4, 3, seed);
    CHECK(r.information <= bound + 1e-9);
    CHECK(r.information >= 0.0);
  }
}

}  // TEST_SUITE
