// conekit-bench: wall-clock comparison of the serial reference kernels
// against the OpenMP kernels on deterministic inputs. Each row checks that
// both kernels produce identical results before reporting the speedup.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "conekit/circuits.hpp"
#include "conekit/cones.hpp"
#include "conekit/cpext.hpp"
#include "conekit/gpt.hpp"
#include "conekit/matrix.hpp"
#include "conekit/parallel.hpp"
#include "conekit/polytopes.hpp"
#include "conekit/protocol.hpp"

namespace {

using conekit::RatMat;
using conekit::RatVec;

double run_ms(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool match) {
  std::printf("%-28s %10.1f %12.1f %8.2fx %7s\n", name, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, match ? "ok" : "MISMATCH");
}

RatMat random_symmetric(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> entry(-9, 9);
  RatMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = entry(rng);
  return m;
}

// Serial runs of thread-count-agnostic kernels are forced through the same
// environment cap the CLI documents.
struct ThreadCap {
  explicit ThreadCap(const char* v) {
    if (const char* old = std::getenv("CONEKIT_THREADS")) saved = old;
    setenv("CONEKIT_THREADS", v, 1);
  }
  ~ThreadCap() {
    if (saved.empty()) {
      unsetenv("CONEKIT_THREADS");
    } else {
      setenv("CONEKIT_THREADS", saved.c_str(), 1);
    }
  }
  std::string saved;
};

}  // namespace

int main() {
  std::printf("threads: %d\n\n", conekit::max_threads());
  std::printf("%-28s %10s %12s %9s %7s\n", "kernel", "serial_ms", "parallel_ms", "speedup",
              "match");

  std::mt19937_64 rng(20250817);

  {
    const RatMat m = random_symmetric(11, rng);
    conekit::SimplexQuadMin a, b;
    const double ts = run_ms([&] { a = conekit::simplex_min_quadratic_serial(m); });
    const double tp = run_ms([&] { b = conekit::simplex_min_quadratic_parallel(m); });
    report("simplex_min (side 11)", ts, tp, a.value == b.value && a.argmin == b.argmin);
  }

  {
    const RatMat q = random_symmetric(18, rng);
    conekit::KappaResult a, b;
    const double ts = run_ms([&] { a = conekit::kappa_min_serial(q); });
    const double tp = run_ms([&] { b = conekit::kappa_min_parallel(q); });
    report("kappa_min (n = 18)", ts, tp, a.kappa == b.kappa && a.argmin == b.argmin);
  }

  {
    const int dim = 7;
    std::set<std::vector<int>> picked;
    std::uniform_int_distribution<int> bit(0, 1);
    while (picked.size() < 56) {
      std::vector<int> v(dim);
      for (int& x : v) x = bit(rng);
      picked.insert(v);
    }
    std::vector<RatVec> vertices;
    for (const auto& v : picked) vertices.emplace_back(v.begin(), v.end());
    const auto p = conekit::make_zero_one_polytope(dim, vertices);
    const auto h = conekit::facet_enum(p);
    RatMat a{0, 0}, b{0, 0};
    const double ts = run_ms([&] { a = conekit::slack_matrix_serial(p, h); });
    const double tp = run_ms([&] { b = conekit::slack_matrix(p, h); });
    bool match = a.rows() == b.rows() && a.cols() == b.cols();
    for (int r = 0; match && r < a.rows(); ++r)
      for (int c = 0; match && c < a.cols(); ++c) match = a(r, c) == b(r, c);
    std::string label = "slack_matrix (56 x " + std::to_string(h.a.rows()) + ")";
    report(label.c_str(), ts, tp, match);
  }

  {
    conekit::NorCircuit c;
    c.inputs = 10;
    for (int k = 0; k < 7; ++k) {
      const int prev = k == 0 ? 0 : c.inputs + k - 1;
      c.gates.push_back({k % c.inputs, prev});
    }
    c.output = c.inputs + static_cast<int>(c.gates.size()) - 1;
    const auto face = conekit::compile_face(c);
    std::vector<std::vector<int>> a, b;
    const double ts = run_ms([&] { a = conekit::face_vertices_serial(face); });
    const double tp = run_ms([&] { b = conekit::face_vertices_parallel(face); });
    report("face_vertices (n = 17)", ts, tp, a == b);
  }

  {
    const auto p = conekit::correlation_polytope(2);
    const auto h = conekit::facet_enum(p);
    const auto s = conekit::slack_matrix(p, h);
    const auto triv = conekit::trivial_orthant_factorization(s);
    conekit::ConeFactorization f{triv.cone, triv.t, triv.u, {}, {}};
    RatMat unit(triv.cone.ambient, 1);
    for (int i = 0; i < triv.cone.ambient; ++i) unit(i, 0) = 1;
    const auto protocol = conekit::protocol_from_factorization(f, unit);
    conekit::SimulationResult a, b;
    double ts = 0, tp = 0;
    {
      ThreadCap cap("1");
      ts = run_ms([&] { a = conekit::simulate(protocol, 500000, 11); });
    }
    tp = run_ms([&] { b = conekit::simulate(protocol, 500000, 11); });
    bool match = true;
    for (int x = 0; match && x < b.empirical.rows(); ++x)
      for (int y = 0; match && y < b.empirical.cols(); ++y)
        match = a.empirical(x, y) == b.empirical(x, y);
    report("simulate (16 cells x 5e5)", ts, tp, match);
  }

  {
    const auto sys = conekit::default_gpt_system(conekit::ConeKind::Orthant, 3);
    conekit::CapacityResult a, b;
    double ts = 0, tp = 0;
    {
      ThreadCap cap("1");
      ts = run_ms([&] { a = conekit::holevo_capacity_lower(sys, 3, 3, 16, 1); });
    }
    tp = run_ms([&] { b = conekit::holevo_capacity_lower(sys, 3, 3, 16, 1); });
    report("capacity (16 restarts)", ts, tp,
           a.information == b.information && a.restart_index == b.restart_index);
  }

  return 0;
}
