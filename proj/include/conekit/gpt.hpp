#pragma once

#include <cstdint>
#include <vector>

#include "conekit/cones.hpp"
#include "conekit/matrix.hpp"

namespace conekit {

// A GPT system: states live in the cone, effects in its dual, and the unit
// effect is interior to the dual. States ω with <unit, ω> = 1 are
// normalized; outcome probabilities are P(i|ω) = <e_i, ω>.
struct GptSystem {
  ConeOracle cone;  // state cone C
  RatMat unit{0, 0};  // u, interior to C*
  int gpt_dim() const { return cone.gpt_dim(); }
};

// Validates the unit's interiority (exact for the orthant / copositive dual,
// minimum eigenvalue for psd). Copositive state cones are rejected: their
// dual's interior is not decidable here.
GptSystem make_gpt_system(ConeOracle cone, RatMat unit);

// Unit choice for completely-positive-state systems.
enum class CpUnit { Identity, AllOnes };

// Defaults: all-ones vector (orthant), identity (psd), identity or all-ones
// (completely positive states, per cp_unit). Copositive states are rejected.
GptSystem default_gpt_system(ConeKind kind, int ambient, CpUnit cp_unit = CpUnit::Identity);

// A measurement: effects in C* summing to the unit (exactly, or within
// 1e-10 for float-derived data).
struct Measurement {
  std::vector<RatMat> effects;
};

void validate_measurement(const GptSystem& sys, const Measurement& m, double tol = 1e-10);

// P(i|ω) = <e_i, ω> as doubles. Entries in [-1e-12, 0) are clipped to zero;
// anything lower means the inputs were invalid (throws).
std::vector<double> outcome_distribution(const GptSystem& sys, const RatMat& omega,
                                         const Measurement& m);

// Refinement: split every effect into extremal pieces. outcome_map[j] is the
// source outcome of refined effect j; grouping the refined effects by it and
// summing recovers the source measurement (exactly for the orthant, within
// the spectral-split tolerance for psd). Zero effects vanish (empty groups).
struct RefinedMeasurement {
  Measurement refined;
  std::vector<int> outcome_map;
};
RefinedMeasurement refine_measurement(const GptSystem& sys, const Measurement& m);

// Convex mixture of measurements with a common outcome count: the
// per-outcome sums sum_k w_k e_i^(k) reproduce a source measurement.
struct WeightedPart {
  Rat weight;
  Measurement part;
};
struct MeasurementMixture {
  std::vector<WeightedPart> parts;
};

// Extremal decomposition: refine, then peel the refined measurement into a
// mixture in which every part has at most gpt_dim nonzero effects, all
// extremal. The mixture recombines to `refined` exactly; composing with
// outcome_map recovers the input up to the refinement error.
struct DecomposeResult {
  Measurement refined;
  std::vector<int> outcome_map;
  MeasurementMixture mixture;
};
DecomposeResult decompose_measurement(const GptSystem& sys, const Measurement& m);

// Shannon entropy in bits, 0 log 0 = 0, clamped to [0, log2(len)]. When all
// nonzero entries are the same double the result is log2(count) exactly.
double entropy_bits(const std::vector<double>& q);

// I(X;Y) = H(Y) - H(Y|X) in bits for prior p and row-stochastic channel
// w(y|x); clamped to [0, log2(#outcomes)]. Negative entries are treated as 0.
double mutual_information(const std::vector<double>& p, const DMat& w);

// An ensemble: prior over inputs and one normalized state per input.
struct Ensemble {
  std::vector<double> prior;
  std::vector<RatMat> states;
};

// Best mutual information found by seeded search (hill-climbing on states
// and effects with feasibility repair, Blahut-Arimoto on the prior), plus a
// canonical noiseless-channel construction evaluated without search
// (restart_index -1). Deterministic given the seed. Never exceeds
// capacity_bound by more than float noise.
struct CapacityResult {
  double information = 0.0;
  Ensemble ensemble;
  Measurement measurement;
  int restart_index = -1;
};
CapacityResult holevo_capacity_lower(const GptSystem& sys, int num_inputs, int num_outcomes,
                                     int restarts, std::uint64_t seed);

// log2 of the GPT dimension: the information-capacity upper bound.
double capacity_bound(const GptSystem& sys);

}  // namespace conekit
