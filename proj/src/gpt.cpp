#include "conekit/gpt.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "conekit/eig.hpp"
#include "conekit/linalg.hpp"
#include "conekit/parallel.hpp"
#include "conekit/rng.hpp"

namespace conekit {

GptSystem make_gpt_system(ConeOracle cone, RatMat unit) {
  if (cone.kind == ConeKind::Copositive)
    throw std::invalid_argument(
        "make_gpt_system: copositive-state systems are out of scope (dual interior undecidable)");
  const ConeOracle dual = cone.dual();
  dual.require_element_shape(unit, "make_gpt_system");
  if (!is_interior(dual, unit))
    throw std::invalid_argument("make_gpt_system: unit is not interior to the dual cone");
  return {cone, std::move(unit)};
}

GptSystem default_gpt_system(ConeKind kind, int ambient, CpUnit cp_unit) {
  switch (kind) {
    case ConeKind::Orthant: {
      RatMat u(ambient, 1, Rat(1));
      return make_gpt_system(orthant_cone(ambient), std::move(u));
    }
    case ConeKind::Psd:
      return make_gpt_system(psd_cone(ambient), RatMat::identity(ambient));
    case ConeKind::CompletelyPositive: {
      RatMat u = cp_unit == CpUnit::AllOnes ? RatMat(ambient, ambient, Rat(1))
                                            : RatMat::identity(ambient);
      return make_gpt_system(completely_positive_cone(ambient), std::move(u));
    }
    case ConeKind::Copositive:
      throw std::invalid_argument("default_gpt_system: copositive-state systems are out of scope");
  }
  throw std::logic_error("default_gpt_system: bad kind");
}

void validate_measurement(const GptSystem& sys, const Measurement& m, double tol) {
  if (m.effects.empty()) throw std::invalid_argument("measurement has no effects");
  const ConeOracle dual = sys.cone.dual();
  RatMat sum(sys.unit.rows(), sys.unit.cols());
  for (size_t i = 0; i < m.effects.size(); ++i) {
    auto c = contains(dual, m.effects[i], tol);
    if (c.status == Membership::NotMember)
      throw std::invalid_argument("measurement effect " + std::to_string(i) +
                                  " is outside the dual cone");
    if (c.status == Membership::Unknown)
      throw std::invalid_argument("measurement effect " + std::to_string(i) +
                                  " has undecidable membership for this cone");
    sum = sum + m.effects[i];
  }
  if (max_abs_entry(sum - sys.unit) > rat_from_double(tol))
    throw std::invalid_argument("measurement effects do not sum to the unit");
}

std::vector<double> outcome_distribution(const GptSystem& sys, const RatMat& omega,
                                         const Measurement& m) {
  validate_measurement(sys, m);
  sys.cone.require_element_shape(omega, "outcome_distribution");
  auto st = contains(sys.cone, omega, 1e-10);
  if (st.status == Membership::NotMember)
    throw std::invalid_argument("outcome_distribution: state is outside the cone");
  Rat norm = frobenius(sys.unit, omega);
  if (rat_abs(norm - 1) > rat_from_double(1e-10))
    throw std::invalid_argument("outcome_distribution: state is not normalized");

  std::vector<double> p;
  p.reserve(m.effects.size());
  for (const auto& e : m.effects) {
    double v = to_double(frobenius(e, omega));
    if (v < -1e-12)
      throw std::invalid_argument("outcome_distribution: negative outcome probability");
    p.push_back(std::max(v, 0.0));
  }
  return p;
}

RefinedMeasurement refine_measurement(const GptSystem& sys, const Measurement& m) {
  if (sys.cone.kind != ConeKind::Orthant && sys.cone.kind != ConeKind::Psd)
    throw std::invalid_argument("refine_measurement: supported cones are orthant and psd");
  validate_measurement(sys, m);
  const ConeOracle dual = sys.cone.dual();
  RefinedMeasurement out;
  for (size_t i = 0; i < m.effects.size(); ++i) {
    for (auto& part : extremal_refine(dual, m.effects[i])) {
      out.refined.effects.push_back(std::move(part));
      out.outcome_map.push_back(static_cast<int>(i));
    }
  }
  return out;
}

DecomposeResult decompose_measurement(const GptSystem& sys, const Measurement& m) {
  DecomposeResult out;
  {
    auto r = refine_measurement(sys, m);
    out.refined = std::move(r.refined);
    out.outcome_map = std::move(r.outcome_map);
  }
  const int n = sys.gpt_dim();
  const ConeOracle dual = sys.cone.dual();

  // Peel against the exact sum of the refined effects (for psd refinements
  // this differs from the original unit by the spectral-split error).
  RatMat ubar(sys.unit.rows(), sys.unit.cols());
  for (const auto& e : out.refined.effects) ubar = ubar + e;

  std::vector<RatMat> g = out.refined.effects;
  Rat wrem(1);
  for (;;) {
    int live = 0;
    for (const auto& e : g)
      if (max_abs_entry(e) != 0) ++live;
    if (live <= n) {
      out.mixture.parts.push_back({wrem, Measurement{g}});
      break;
    }
    RatVec lambda = caratheodory_unit(g, ubar, dual);
    Rat lmax(0);
    for (const auto& l : lambda) lmax = std::max(lmax, l);
    if (lmax <= 1)
      throw std::logic_error(
          "decompose_measurement: peeling weight <= 1 with too many live effects "
          "(contradicts the decomposition invariant; inputs are corrupted)");

    Measurement part;
    part.effects.reserve(g.size());
    for (size_t i = 0; i < g.size(); ++i) part.effects.push_back(g[i] * lambda[i]);
    out.mixture.parts.push_back({wrem / lmax, std::move(part)});

    const Rat denom = lmax - 1;
    for (size_t i = 0; i < g.size(); ++i) g[i] = g[i] * ((lmax - lambda[i]) / denom);
    wrem *= denom / lmax;
  }
  return out;
}

double entropy_bits(const std::vector<double>& q) {
  if (q.empty()) return 0.0;
  int count = 0;
  double first = 0.0;
  bool all_equal = true;
  for (double v : q) {
    if (v <= 0.0) continue;
    if (count == 0)
      first = v;
    else if (v != first)
      all_equal = false;
    ++count;
  }
  if (count == 0) return 0.0;
  // Equal nonzero entries: return log2(count) exactly (the canonical uniform
  // case must come out bit-exact).
  double h;
  if (all_equal) {
    h = std::log2(static_cast<double>(count));
  } else {
    h = 0.0;
    for (double v : q)
      if (v > 0.0) h -= v * std::log2(v);
  }
  const double cap = std::log2(static_cast<double>(q.size()));
  return std::min(std::max(h, 0.0), cap);
}

double mutual_information(const std::vector<double>& p, const DMat& w) {
  if (static_cast<int>(p.size()) != w.rows())
    throw std::invalid_argument("mutual_information: prior length must match channel rows");
  const int kin = w.rows(), kout = w.cols();
  std::vector<double> q(kout, 0.0);
  double hyx = 0.0;
  std::vector<double> row(kout);
  for (int x = 0; x < kin; ++x) {
    const double px = std::max(p[static_cast<size_t>(x)], 0.0);
    if (px == 0.0) continue;
    for (int y = 0; y < kout; ++y) {
      row[static_cast<size_t>(y)] = std::max(w(x, y), 0.0);
      q[static_cast<size_t>(y)] += px * row[static_cast<size_t>(y)];
    }
    hyx += px * entropy_bits(row);
  }
  const double i = entropy_bits(q) - hyx;
  const double cap = std::log2(static_cast<double>(kout));
  return std::min(std::max(i, 0.0), cap);
}

// ---------------------------------------------------------------------------
// Capacity search internals (doubles; results are rationalized at the end).

namespace {

struct DoubleSystem {
  ConeKind kind;
  int amb = 0;
  DMat u{0, 0};
  DMat u_sqrt{0, 0};  // psd only
};

DMat eig_rebuild(const SymEig& e, int d, double (*f)(double)) {
  DMat m(d, d);
  for (int k = 0; k < d; ++k) {
    const double lam = f(e.eigenvalues[static_cast<size_t>(k)]);
    if (lam == 0.0) continue;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) m(r, c) += lam * e.eigenvectors(r, k) * e.eigenvectors(c, k);
  }
  return m;
}

DMat psd_clip(const DMat& m) {
  DMat s = (m + m.transpose()) * 0.5;
  auto e = sym_eig(s);
  if (e.eigenvalues.front() >= 0.0) return s;
  return eig_rebuild(e, m.rows(), [](double x) { return std::max(x, 0.0); });
}

DoubleSystem lower_system(const GptSystem& sys) {
  DoubleSystem d;
  d.kind = sys.cone.kind;
  d.amb = sys.cone.ambient;
  d.u = to_double(sys.unit);
  if (d.kind == ConeKind::Psd)
    d.u_sqrt = eig_rebuild(sym_eig(d.u), d.amb, [](double x) { return std::sqrt(std::max(x, 0.0)); });
  return d;
}

void repair_state(const DoubleSystem& ds, DMat& w) {
  if (ds.kind == ConeKind::Orthant) {
    double s = 0.0;
    for (int i = 0; i < ds.amb; ++i) {
      w(i, 0) = std::max(w(i, 0), 0.0);
      s += ds.u(i, 0) * w(i, 0);
    }
    if (s < 1e-12) {
      for (int i = 0; i < ds.amb; ++i) w(i, 0) = 1.0;
      s = 0.0;
      for (int i = 0; i < ds.amb; ++i) s += ds.u(i, 0);
    }
    w = w * (1.0 / s);
  } else {
    w = psd_clip(w);
    double s = frobenius(ds.u, w);
    if (s < 1e-12) {
      w = DMat::identity(ds.amb);
      s = frobenius(ds.u, w);
    }
    w = w * (1.0 / s);
  }
}

void repair_effects(const DoubleSystem& ds, std::vector<DMat>& es) {
  const int k = static_cast<int>(es.size());
  if (ds.kind == ConeKind::Orthant) {
    for (auto& e : es)
      for (int i = 0; i < ds.amb; ++i) e(i, 0) = std::max(e(i, 0), 0.0);
    for (int i = 0; i < ds.amb; ++i) {
      double s = 0.0;
      for (const auto& e : es) s += e(i, 0);
      if (s < 1e-15) {
        for (auto& e : es) e(i, 0) = ds.u(i, 0) / k;
      } else {
        const double f = ds.u(i, 0) / s;
        for (auto& e : es) e(i, 0) *= f;
      }
    }
    return;
  }
  for (auto& e : es) e = psd_clip(e);
  DMat t(ds.amb, ds.amb);
  for (const auto& e : es) t = t + e;
  for (int tries = 0; tries < 5 && min_eigenvalue(t) < 1e-9; ++tries) {
    // Blend toward the (interior) unit so the sum becomes invertible.
    const double theta = 1e-3;
    t = DMat(ds.amb, ds.amb);
    for (auto& e : es) {
      e = e * (1.0 - theta) + ds.u * (theta / k);
      t = t + e;
    }
  }
  DMat tinv_sqrt = eig_rebuild(sym_eig(t), ds.amb, [](double x) {
    return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0;
  });
  const DMat r = ds.u_sqrt * tinv_sqrt;
  const DMat rt = r.transpose();
  for (auto& e : es) {
    e = r * e * rt;
    e = (e + e.transpose()) * 0.5;
  }
}

DMat random_sym(const DoubleSystem& ds, SplitMix64& rng, double scale) {
  DMat g(ds.amb, ds.amb);
  for (int i = 0; i < ds.amb; ++i)
    for (int j = i; j < ds.amb; ++j) {
      const double v = scale * rng.next_normal();
      g(i, j) = v;
      g(j, i) = v;
    }
  return g;
}

DMat random_state(const DoubleSystem& ds, SplitMix64& rng) {
  if (ds.kind == ConeKind::Orthant) {
    DMat w(ds.amb, 1);
    for (int i = 0; i < ds.amb; ++i) w(i, 0) = -std::log(rng.next_double_pos());
    repair_state(ds, w);
    return w;
  }
  DMat g(ds.amb, ds.amb);
  for (int i = 0; i < ds.amb; ++i)
    for (int j = 0; j < ds.amb; ++j) g(i, j) = rng.next_normal();
  DMat w = g * g.transpose();
  repair_state(ds, w);
  return w;
}

std::vector<DMat> random_effects(const DoubleSystem& ds, SplitMix64& rng, int k) {
  std::vector<DMat> es;
  es.reserve(static_cast<size_t>(k));
  if (ds.kind == ConeKind::Orthant) {
    for (int y = 0; y < k; ++y) es.emplace_back(ds.amb, 1);
    for (int i = 0; i < ds.amb; ++i) {
      double s = 0.0;
      std::vector<double> gi(static_cast<size_t>(k));
      for (int y = 0; y < k; ++y) {
        gi[static_cast<size_t>(y)] = -std::log(rng.next_double_pos());
        s += gi[static_cast<size_t>(y)];
      }
      for (int y = 0; y < k; ++y)
        es[static_cast<size_t>(y)](i, 0) = ds.u(i, 0) * gi[static_cast<size_t>(y)] / s;
    }
    return es;
  }
  for (int y = 0; y < k; ++y) {
    DMat g(ds.amb, ds.amb);
    for (int i = 0; i < ds.amb; ++i)
      for (int j = 0; j < ds.amb; ++j) g(i, j) = rng.next_normal();
    es.push_back(g * g.transpose() + DMat::identity(ds.amb) * 0.05);
  }
  repair_effects(ds, es);
  return es;
}

DMat channel_matrix(const std::vector<DMat>& states, const std::vector<DMat>& effects) {
  DMat w(static_cast<int>(states.size()), static_cast<int>(effects.size()));
  for (size_t x = 0; x < states.size(); ++x) {
    double s = 0.0;
    for (size_t y = 0; y < effects.size(); ++y) {
      const double v = std::max(frobenius(states[x], effects[y]), 0.0);
      w(static_cast<int>(x), static_cast<int>(y)) = v;
      s += v;
    }
    if (s > 1e-12)
      for (size_t y = 0; y < effects.size(); ++y)
        w(static_cast<int>(x), static_cast<int>(y)) /= s;
  }
  return w;
}

std::vector<double> ba_prior(const DMat& w, int iters) {
  const int kin = w.rows(), kout = w.cols();
  std::vector<double> p(static_cast<size_t>(kin), 1.0 / kin);
  std::vector<double> q(static_cast<size_t>(kout));
  std::vector<double> c(static_cast<size_t>(kin));
  for (int it = 0; it < iters; ++it) {
    std::fill(q.begin(), q.end(), 0.0);
    for (int x = 0; x < kin; ++x)
      for (int y = 0; y < kout; ++y) q[static_cast<size_t>(y)] += p[static_cast<size_t>(x)] * w(x, y);
    double z = 0.0;
    for (int x = 0; x < kin; ++x) {
      if (p[static_cast<size_t>(x)] == 0.0) {
        c[static_cast<size_t>(x)] = 0.0;
        continue;
      }
      double d = 0.0;
      for (int y = 0; y < kout; ++y) {
        const double wxy = w(x, y);
        if (wxy > 0.0) d += wxy * std::log(wxy / std::max(q[static_cast<size_t>(y)], 1e-300));
      }
      c[static_cast<size_t>(x)] = std::exp(std::min(d, 600.0));
      z += p[static_cast<size_t>(x)] * c[static_cast<size_t>(x)];
    }
    if (!(z > 0.0)) break;
    double diff = 0.0;
    for (int x = 0; x < kin; ++x) {
      const double np = p[static_cast<size_t>(x)] * c[static_cast<size_t>(x)] / z;
      diff = std::max(diff, std::fabs(np - p[static_cast<size_t>(x)]));
      p[static_cast<size_t>(x)] = np;
    }
    if (diff < 1e-13) break;
  }
  return p;
}

struct Snapshot {
  double info = -1.0;
  std::vector<double> prior;
  std::vector<DMat> states;
  std::vector<DMat> effects;
};

Snapshot evaluate(const std::vector<DMat>& states, const std::vector<DMat>& effects,
                  int ba_iters) {
  Snapshot s;
  const DMat w = channel_matrix(states, effects);
  s.prior = ba_prior(w, ba_iters);
  s.info = mutual_information(s.prior, w);
  s.states = states;
  s.effects = effects;
  return s;
}

Snapshot run_restart(const DoubleSystem& ds, int kin, int kout, std::uint64_t seed) {
  constexpr int kIters = 240;
  constexpr int kBaIters = 80;
  SplitMix64 rng(seed);
  std::vector<DMat> states;
  states.reserve(static_cast<size_t>(kin));
  for (int x = 0; x < kin; ++x) states.push_back(random_state(ds, rng));
  std::vector<DMat> effects = random_effects(ds, rng, kout);

  Snapshot cur = evaluate(states, effects, kBaIters);
  Snapshot best = cur;
  for (int it = 0; it < kIters; ++it) {
    const double sigma = 0.7 * std::exp(-4.0 * it / kIters) + 0.01;
    if ((it & 1) == 0) {
      const int x = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(kin)));
      DMat save = states[static_cast<size_t>(x)];
      DMat& w = states[static_cast<size_t>(x)];
      if (ds.kind == ConeKind::Orthant) {
        for (int i = 0; i < ds.amb; ++i) w(i, 0) += sigma * rng.next_normal() / ds.amb;
      } else {
        w = w + random_sym(ds, rng, sigma / ds.amb);
      }
      repair_state(ds, w);
      Snapshot cand = evaluate(states, effects, kBaIters);
      if (cand.info > cur.info + 1e-15) {
        cur = std::move(cand);
        if (cur.info > best.info) best = cur;
      } else {
        states[static_cast<size_t>(x)] = std::move(save);
      }
    } else {
      const int y = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(kout)));
      std::vector<DMat> save = effects;
      DMat& e = effects[static_cast<size_t>(y)];
      if (ds.kind == ConeKind::Orthant) {
        for (int i = 0; i < ds.amb; ++i) e(i, 0) += sigma * rng.next_normal() / ds.amb;
      } else {
        e = e + random_sym(ds, rng, sigma / ds.amb);
      }
      repair_effects(ds, effects);
      Snapshot cand = evaluate(states, effects, kBaIters);
      if (cand.info > cur.info + 1e-15) {
        cur = std::move(cand);
        if (cur.info > best.info) best = cur;
      } else {
        effects = std::move(save);
      }
    }
  }
  return best;
}

// Exact noiseless construction on the orthant (any positive unit) or on psd
// with the identity unit: block the coordinates, send one representative per
// block. Mutual information is exactly log2(min(kin, kout, #coordinates)).
std::optional<Snapshot> canonical_candidate(const GptSystem& sys, int kin, int kout) {
  const ConeKind kind = sys.cone.kind;
  const int d = sys.cone.ambient;
  if (kind == ConeKind::Psd && !(sys.unit == RatMat::identity(d))) return std::nullopt;

  const int nblocks = std::min(kout, d);
  std::vector<int> block_of(static_cast<size_t>(d));
  std::vector<int> rep(static_cast<size_t>(nblocks), -1);
  for (int i = 0; i < d; ++i) {
    const int b = i * nblocks / d;
    block_of[static_cast<size_t>(i)] = b;
    if (rep[static_cast<size_t>(b)] < 0) rep[static_cast<size_t>(b)] = i;
  }

  std::vector<RatMat> effects, states;
  const int k = std::min(kin, nblocks);
  if (kind == ConeKind::Orthant) {
    for (int y = 0; y < kout; ++y) {
      RatMat e(d, 1);
      if (y < nblocks)
        for (int i = 0; i < d; ++i)
          if (block_of[static_cast<size_t>(i)] == y) e(i, 0) = sys.unit(i, 0);
      effects.push_back(std::move(e));
    }
    for (int x = 0; x < kin; ++x) {
      const int r = rep[static_cast<size_t>(x % k)];
      RatMat w(d, 1);
      w(r, 0) = 1 / sys.unit(r, 0);
      states.push_back(std::move(w));
    }
  } else {
    for (int y = 0; y < kout; ++y) {
      RatMat e(d, d);
      if (y < nblocks)
        for (int i = 0; i < d; ++i)
          if (block_of[static_cast<size_t>(i)] == y) e(i, i) = 1;
      effects.push_back(std::move(e));
    }
    for (int x = 0; x < kin; ++x) {
      const int r = rep[static_cast<size_t>(x % k)];
      RatMat w(d, d);
      w(r, r) = 1;
      states.push_back(std::move(w));
    }
  }

  Snapshot s;
  DMat w(kin, kout);
  for (int x = 0; x < kin; ++x)
    for (int y = 0; y < kout; ++y)
      w(x, y) = to_double(frobenius(states[static_cast<size_t>(x)],
                                    effects[static_cast<size_t>(y)]));
  s.prior.assign(static_cast<size_t>(kin), 0.0);
  for (int x = 0; x < k; ++x) s.prior[static_cast<size_t>(x)] = 1.0 / k;
  s.info = mutual_information(s.prior, w);
  for (const auto& m : states) s.states.push_back(to_double(m));
  for (const auto& m : effects) s.effects.push_back(to_double(m));
  return s;
}

}  // namespace

CapacityResult holevo_capacity_lower(const GptSystem& sys, int num_inputs, int num_outcomes,
                                     int restarts, std::uint64_t seed) {
  if (sys.cone.kind != ConeKind::Orthant && sys.cone.kind != ConeKind::Psd)
    throw std::invalid_argument("holevo_capacity_lower: supported cones are orthant and psd");
  if (num_inputs < 1 || num_outcomes < 1)
    throw std::invalid_argument("holevo_capacity_lower: need at least one input and outcome");
  if (restarts < 0) throw std::invalid_argument("holevo_capacity_lower: negative restart count");

  const DoubleSystem ds = lower_system(sys);
  std::optional<Snapshot> best = canonical_candidate(sys, num_inputs, num_outcomes);
  int best_index = -1;

  SplitMix64 seeder(seed);
  std::vector<std::uint64_t> seeds(static_cast<size_t>(restarts));
  for (auto& s : seeds) s = seeder.next();
  std::vector<Snapshot> results(static_cast<size_t>(restarts));
#pragma omp parallel for schedule(dynamic) if (parallel_enabled() && restarts > 1)
  for (int r = 0; r < restarts; ++r)
    results[static_cast<size_t>(r)] =
        run_restart(ds, num_inputs, num_outcomes, seeds[static_cast<size_t>(r)]);
  for (int r = 0; r < restarts; ++r) {
    // Strict improvement only: ties resolve to the lowest index, with the
    // canonical construction (index -1) first.
    if (!best || results[static_cast<size_t>(r)].info > best->info) {
      best = std::move(results[static_cast<size_t>(r)]);
      best_index = r;
    }
  }
  if (!best) throw std::invalid_argument("holevo_capacity_lower: no candidate evaluated");

  CapacityResult out;
  out.information = best->info;
  out.restart_index = best_index;
  out.ensemble.prior = best->prior;
  for (const auto& w : best->states) out.ensemble.states.push_back(to_rational(w));
  for (const auto& e : best->effects) out.measurement.effects.push_back(to_rational(e));
  return out;
}

double capacity_bound(const GptSystem& sys) {
  return std::log2(static_cast<double>(sys.gpt_dim()));
}

}  // namespace conekit
