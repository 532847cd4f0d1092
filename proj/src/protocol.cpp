#include "conekit/protocol.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "conekit/parallel.hpp"

namespace conekit {

namespace {

void require_counts(const char* who, size_t have, size_t want, const char* what) {
  if (have != want)
    throw std::invalid_argument(std::string(who) + ": expected " + std::to_string(want) + " " +
                                what + ", got " + std::to_string(have));
}

void check_element(const char* who, const ConeOracle& k, const RatMat& x,
                   const CpCertificate* cert, double tol) {
  auto c = contains(k, x, tol, cert);
  if (c.status == Membership::NotMember)
    throw std::invalid_argument(std::string(who) + ": element outside its cone");
  // Unknown (completely positive side without a certificate) is tolerated.
}

// Scale a certificate's factors by sqrt(s): cert for ω becomes one for s·ω.
// The square root passes through a double, so the reconstruction picks up a
// relative error around 1e-16 — well inside every tolerance used here.
CpCertificate scale_certificate(const CpCertificate& cert, const Rat& s) {
  CpCertificate out;
  const Rat root = rat_from_double(std::sqrt(to_double(s)));
  out.factors.reserve(cert.factors.size());
  for (const auto& z : cert.factors) {
    RatVec f(z.size());
    for (size_t i = 0; i < z.size(); ++i) f[i] = z[i] * root;
    out.factors.push_back(std::move(f));
  }
  return out;
}

}  // namespace

RatMat factorization_matrix(const ConeFactorization& f) {
  RatMat c(static_cast<int>(f.states.size()), static_cast<int>(f.responses.size()));
  for (size_t x = 0; x < f.states.size(); ++x)
    for (size_t y = 0; y < f.responses.size(); ++y)
      c(static_cast<int>(x), static_cast<int>(y)) = frobenius(f.states[x], f.responses[y]);
  return c;
}

void validate_factorization(const ConeFactorization& f, double tol) {
  if (f.states.empty() || f.responses.empty())
    throw std::invalid_argument("validate_factorization: empty factorization");
  if (!f.state_certs.empty())
    require_counts("validate_factorization", f.state_certs.size(), f.states.size(),
                   "state certificates");
  if (!f.response_certs.empty())
    require_counts("validate_factorization", f.response_certs.size(), f.responses.size(),
                   "response certificates");
  const ConeOracle dual = f.cone.dual();
  for (size_t x = 0; x < f.states.size(); ++x)
    check_element("validate_factorization", f.cone, f.states[x],
                  f.state_certs.empty() ? nullptr : &f.state_certs[x], tol);
  for (size_t y = 0; y < f.responses.size(); ++y)
    check_element("validate_factorization", dual, f.responses[y],
                  f.response_certs.empty() ? nullptr : &f.response_certs[y], tol);
  const RatMat c = factorization_matrix(f);
  for (int i = 0; i < c.rows(); ++i)
    for (int j = 0; j < c.cols(); ++j)
      if (c(i, j) < 0)
        throw std::invalid_argument("validate_factorization: represented matrix has a negative entry");
}

void validate_protocol(const OneWayProtocol& p, double tol) {
  const size_t nx = p.states.size();
  const size_t ny = p.measurements.size();
  if (nx == 0 || ny == 0) throw std::invalid_argument("validate_protocol: empty protocol");
  require_counts("validate_protocol", p.proceed.size(), nx, "proceed probabilities");
  require_counts("validate_protocol", p.outputs.size(), ny, "output lists");
  if (!p.state_certs.empty())
    require_counts("validate_protocol", p.state_certs.size(), nx, "state certificates");

  const ConeOracle dual = p.cone.dual();
  if (!is_interior(dual, p.unit))
    throw std::invalid_argument("validate_protocol: unit is not interior to the dual cone");
  if (p.lambda <= 0 || p.mu <= 0)
    throw std::invalid_argument("validate_protocol: scaling constants must be positive");

  const Rat tol_r = rat_from_double(tol);
  for (size_t x = 0; x < nx; ++x) {
    if (p.proceed[x] < 0 || p.proceed[x] > 1)
      throw std::invalid_argument("validate_protocol: proceed probability outside [0, 1]");
    check_element("validate_protocol", p.cone, p.states[x],
                  p.state_certs.empty() ? nullptr : &p.state_certs[x], tol);
    if (rat_abs(frobenius(p.unit, p.states[x]) - 1) > tol_r)
      throw std::invalid_argument("validate_protocol: state is not normalized");
  }
  for (size_t y = 0; y < ny; ++y) {
    const auto& m = p.measurements[y];
    if (m.effects.empty())
      throw std::invalid_argument("validate_protocol: measurement without effects");
    require_counts("validate_protocol", p.outputs[y].size(), m.effects.size(), "outputs");
    RatMat sum(p.unit.rows(), p.unit.cols());
    for (const auto& e : m.effects) {
      check_element("validate_protocol", dual, e, nullptr, tol);
      sum = sum + e;
    }
    if (max_abs_entry(sum - p.unit) > tol_r)
      throw std::invalid_argument("validate_protocol: measurement effects do not sum to the unit");
    for (const auto& r : p.outputs[y])
      if (r < 0) throw std::invalid_argument("validate_protocol: negative output value");
  }
}

OneWayProtocol protocol_from_factorization(const ConeFactorization& f, const RatMat& u) {
  validate_factorization(f);
  const ConeOracle dual = f.cone.dual();
  dual.require_element_shape(u, "protocol_from_factorization");
  if (!is_interior(dual, u))
    throw std::invalid_argument("protocol_from_factorization: unit is not interior to the dual cone");

  OneWayProtocol p;
  p.cone = f.cone;
  p.unit = u;

  // lambda = max_x <u, state(x)>; 1 when every state vanishes so the
  // all-abort protocol is still well-formed.
  std::vector<Rat> weight(f.states.size());
  Rat lambda(0);
  for (size_t x = 0; x < f.states.size(); ++x) {
    weight[x] = frobenius(u, f.states[x]);
    if (weight[x] < 0)
      throw std::invalid_argument("protocol_from_factorization: <u, state> negative");
    lambda = std::max(lambda, weight[x]);
  }
  if (lambda == 0) lambda = 1;
  p.lambda = lambda;

  // Fixed fallback state for vanishing rows: E_11-style, exactly normalized.
  const bool has_certs = !f.state_certs.empty();
  for (size_t x = 0; x < f.states.size(); ++x) {
    p.proceed.push_back(weight[x] / lambda);
    if (weight[x] == 0) {
      if (f.cone.kind == ConeKind::Orthant) {
        RatMat w(f.cone.ambient, 1);
        w(0, 0) = 1 / u(0, 0);
        p.states.push_back(std::move(w));
      } else {
        RatMat w(f.cone.ambient, f.cone.ambient);
        w(0, 0) = 1 / u(0, 0);
        p.states.push_back(std::move(w));
      }
      if (has_certs) {
        CpCertificate c;
        RatVec z(static_cast<size_t>(f.cone.ambient), Rat(0));
        z[0] = 1;
        c.factors.push_back(std::move(z));
        p.state_certs.push_back(scale_certificate(c, 1 / u(0, 0)));
      }
    } else {
      p.states.push_back(f.states[x] * (1 / weight[x]));
      if (has_certs)
        p.state_certs.push_back(scale_certificate(f.state_certs[x], 1 / weight[x]));
    }
  }

  // mu = max_y of the least dominating scale for lambda * response(y).
  Rat mu(0);
  for (const auto& r : f.responses)
    mu = std::max(mu, min_scale_dominating(r * lambda, u, dual));
  if (mu == 0) mu = 1;
  p.mu = mu;

  for (const auto& r : f.responses) {
    Measurement m;
    RatMat e1 = r * (lambda / mu);
    m.effects.push_back(u - e1);  // e0
    m.effects.push_back(std::move(e1));
    p.measurements.push_back(std::move(m));
    p.outputs.push_back(RatVec{Rat(0), mu});
  }
  validate_protocol(p);
  return p;
}

RatMat exact_expectation(const OneWayProtocol& p) {
  RatMat e(static_cast<int>(p.states.size()), static_cast<int>(p.measurements.size()));
  for (size_t x = 0; x < p.states.size(); ++x)
    for (size_t y = 0; y < p.measurements.size(); ++y) {
      Rat v(0);
      const auto& m = p.measurements[y];
      for (size_t i = 0; i < m.effects.size(); ++i)
        if (p.outputs[y][i] != 0)
          v += p.outputs[y][i] * frobenius(p.states[x], m.effects[i]);
      e(static_cast<int>(x), static_cast<int>(y)) = p.proceed[x] * v;
    }
  return e;
}

double sample(const OneWayProtocol& p, int x, int y, SplitMix64& rng) {
  const auto& m = p.measurements[static_cast<size_t>(y)];
  const double keep = to_double(p.proceed[static_cast<size_t>(x)]);
  if (rng.next_double() >= keep) return 0.0;  // abort branch outputs 0
  const double d = rng.next_double();
  double acc = 0.0;
  size_t pick = m.effects.size() - 1;
  for (size_t i = 0; i < m.effects.size(); ++i) {
    acc += std::max(to_double(frobenius(p.states[static_cast<size_t>(x)], m.effects[i])), 0.0);
    if (d < acc) {
      pick = i;
      break;
    }
  }
  return to_double(p.outputs[static_cast<size_t>(y)][pick]);
}

SimulationResult simulate(const OneWayProtocol& p, std::uint64_t samples, std::uint64_t seed) {
  validate_protocol(p);
  SimulationResult res;
  res.exact = exact_expectation(p);
  res.samples = samples;
  const int nx = res.exact.rows(), ny = res.exact.cols();
  res.empirical = DMat(nx, ny);

  // One derived generator per cell so the result is independent of thread
  // scheduling.
  SplitMix64 seeder(seed);
  std::vector<std::uint64_t> cell_seed(static_cast<size_t>(nx) * ny);
  for (auto& s : cell_seed) s = seeder.next();

  const int cells = nx * ny;
#pragma omp parallel for schedule(dynamic) if (parallel_enabled() && cells > 1)
  for (int c = 0; c < cells; ++c) {
    const int x = c / ny, y = c % ny;
    SplitMix64 rng(cell_seed[static_cast<size_t>(c)]);
    double acc = 0.0;
    for (std::uint64_t s = 0; s < samples; ++s) acc += sample(p, x, y, rng);
    res.empirical(x, y) = samples ? acc / static_cast<double>(samples) : 0.0;
  }
  return res;
}

ConeFactorization factorization_from_protocol(const OneWayProtocol& p) {
  validate_protocol(p);  // rejects negative outputs
  ConeFactorization f;
  f.cone = p.cone;
  for (size_t x = 0; x < p.states.size(); ++x) {
    f.states.push_back(p.states[x] * p.proceed[x]);
    if (!p.state_certs.empty())
      f.state_certs.push_back(scale_certificate(p.state_certs[x], p.proceed[x]));
  }
  for (size_t y = 0; y < p.measurements.size(); ++y) {
    RatMat r(p.unit.rows(), p.unit.cols());
    const auto& m = p.measurements[y];
    for (size_t i = 0; i < m.effects.size(); ++i)
      if (p.outputs[y][i] != 0) r = r + m.effects[i] * p.outputs[y][i];
    f.responses.push_back(std::move(r));
  }
  return f;
}

}  // namespace conekit
