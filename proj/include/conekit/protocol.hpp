#pragma once

#include <cstdint>
#include <vector>

#include "conekit/cones.hpp"
#include "conekit/gpt.hpp"
#include "conekit/matrix.hpp"
#include "conekit/rng.hpp"

namespace conekit {

// A cone factorization of the nonnegative matrix C_xy = <states[x],
// responses[y]>: states in the cone, responses in its dual. Certificates
// ride along when a side lives in the completely positive cone.
struct ConeFactorization {
  ConeOracle cone;
  std::vector<RatMat> states;     // one per row input x
  std::vector<RatMat> responses;  // one per column input y
  std::vector<CpCertificate> state_certs;     // empty, or one per state
  std::vector<CpCertificate> response_certs;  // empty, or one per response
};

// C_xy = <states[x], responses[y]>, exact.
RatMat factorization_matrix(const ConeFactorization& f);

// Shape/membership/nonnegativity checks. NotMember throws; Unknown (a
// completely positive element without a certificate) is tolerated.
void validate_factorization(const ConeFactorization& f, double tol = 1e-10);

// One-way protocol with an abort bit: Alice sends ω(x) with probability
// proceed[x] (else Bob outputs 0); Bob measures measurement[y] and emits
// outputs[y][i] >= 0 for outcome i. The canonical compiled form is
// two-outcome with outputs (0, mu).
struct OneWayProtocol {
  ConeOracle cone;  // state cone C
  RatMat unit{0, 0};  // u, interior to C*
  std::vector<RatMat> states;            // normalized: <u, ω(x)> = 1
  std::vector<Rat> proceed;              // p(b=1|x) in [0, 1]
  std::vector<Measurement> measurements; // per y, effects summing to u
  std::vector<RatVec> outputs;           // per y, one value per outcome
  Rat lambda{1};
  Rat mu{1};
  std::vector<CpCertificate> state_certs;  // empty, or one per state
};

void validate_protocol(const OneWayProtocol& p, double tol = 1e-10);

// Compile a factorization into the canonical two-outcome protocol:
// lambda = max_x <u, states[x]> (1 when all states vanish),
// proceed[x] = <u, states[x]> / lambda, ω(x) = states[x] / <u, states[x]>,
// mu = max_y over the least scales with mu*u - lambda*responses[y] in C*,
// e1(y) = (lambda/mu) * responses[y], e0(y) = u - e1(y), outputs (0, mu).
// The expectation of the output in cell (x, y) is then exactly C_xy.
OneWayProtocol protocol_from_factorization(const ConeFactorization& f, const RatMat& u);

// E(x, y) = proceed[x] * sum_i outputs[y][i] * <ω(x), e_i(y)>, exact.
RatMat exact_expectation(const OneWayProtocol& p);

// One protocol run for cell (x, y): abort (0) or the output of the sampled
// outcome. Deterministic given the generator state.
double sample(const OneWayProtocol& p, int x, int y, SplitMix64& rng);

// Monte Carlo means over `samples` runs per cell, one derived generator per
// cell (deterministic, cells independent, parallel-safe).
struct SimulationResult {
  RatMat exact{0, 0};
  DMat empirical{0, 0};
  std::uint64_t samples = 0;
};
SimulationResult simulate(const OneWayProtocol& p, std::uint64_t samples, std::uint64_t seed);

// Reverse direction: states p(b=1|x)·ω(x), responses sum_i outputs[y][i] e_i(y).
// The factorization matrix equals exact_expectation(p) identically. Rejects
// negative outputs.
ConeFactorization factorization_from_protocol(const OneWayProtocol& p);

}  // namespace conekit
