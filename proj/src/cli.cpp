#include "conekit/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "conekit/circuits.hpp"
#include "conekit/cones.hpp"
#include "conekit/cpext.hpp"
#include "conekit/gpt.hpp"
#include "conekit/io.hpp"
#include "conekit/matrix.hpp"
#include "conekit/polytopes.hpp"
#include "conekit/protocol.hpp"

namespace conekit {
namespace {

// ---------------------------------------------------------------------------
// Output plumbing shared by every verb.

struct OutputOpts {
  std::string out_path;
  std::string format = "json";
  bool exact = false;
};

void add_output_opts(CLI::App* cmd, OutputOpts* o) {
  cmd->add_option("--out", o->out_path, "Write the artifact to this file instead of stdout");
  cmd->add_option("--format", o->format, "Artifact format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  cmd->add_flag("--exact", o->exact,
                "Render rationals exactly as p/q strings instead of doubles");
}

// The artifact goes to --out when given, else to the output stream. JSON is
// dumped with a fixed indent so identical runs produce identical bytes.
void emit(const OutputOpts& o, const Json& j, const std::string& text, std::ostream& out) {
  const std::string payload = o.format == "text" ? text : j.dump(2) + "\n";
  if (o.out_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + o.out_path + "'");
  f << payload;
}

// ---------------------------------------------------------------------------
// Text rendering.

std::string render_double(double x) { return Json(x).dump(); }

std::string render_rat(const Rat& q, bool exact) {
  return exact ? rat_to_string(q) : render_double(to_double(q));
}

std::string pad_table(const std::vector<std::vector<std::string>>& cells) {
  if (cells.empty()) return "  (none)\n";
  std::vector<std::size_t> width;
  for (const auto& row : cells) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  for (const auto& row : cells) {
    os << " ";
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << " " << std::string(width[c] - row[c].size(), ' ') << row[c];
    }
    os << "\n";
  }
  return os.str();
}

std::string text_matrix(const RatMat& m, bool exact) {
  std::vector<std::vector<std::string>> cells(m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) cells[r].push_back(render_rat(m(r, c), exact));
  return pad_table(cells);
}

std::string text_matrix(const DMat& m) {
  std::vector<std::vector<std::string>> cells(m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) cells[r].push_back(render_double(m(r, c)));
  return pad_table(cells);
}

// Inequality/equality rows as "a1 a2 ... | b" tables.
std::string text_rows(const RatMat& a, const RatVec& b, bool exact) {
  std::vector<std::vector<std::string>> cells(a.rows());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) cells[r].push_back(render_rat(a(r, c), exact));
    cells[r].push_back("|");
    cells[r].push_back(render_rat(b[static_cast<std::size_t>(r)], exact));
  }
  return pad_table(cells);
}

std::string tuple_text(const std::vector<int>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

std::string set_text(const std::vector<std::vector<int>>& vs) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? ", " : "") << tuple_text(vs[i]);
  os << "}";
  return os.str();
}

// Correlation-polytope equation in z_ij notation (1-based, diagonal-first).
std::string eq_text(const FaceEquation& eq, int n) {
  const auto coords = sym_coords(n);
  auto z_name = [n](int i, int j) {
    std::ostringstream os;
    if (n <= 9) {
      os << "z" << (i + 1) << (j + 1);
    } else {
      os << "z[" << (i + 1) << "," << (j + 1) << "]";
    }
    return os.str();
  };
  std::ostringstream os;
  bool first = true;
  for (std::size_t t = 0; t < eq.coeffs.size(); ++t) {
    const Rat& c = eq.coeffs[t];
    if (c == 0) continue;
    const Rat mag = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1) os << rat_to_string(mag) << " ";
    os << z_name(coords[t].first, coords[t].second);
    first = false;
  }
  if (first) os << "0";
  os << " = " << rat_to_string(eq.rhs);
  return os.str();
}

Json report_json(const FactorizationReport& r) {
  Json j;
  j["max_abs_err"] = to_double(r.max_abs_err);
  j["pairing_ok"] = r.pairing_ok;
  j["membership_ok"] = r.membership_ok;
  j["not_member"] = r.not_member;
  j["unknown"] = r.unknown;
  j["note"] = r.note;
  j["ok"] = r.ok();
  return j;
}

// Default unit effect for a factorization's state cone: all-ones over the
// orthant, the identity over the matrix cones.
RatMat unit_for(const ConeOracle& k) {
  if (k.kind == ConeKind::Orthant) {
    RatMat u(k.ambient, 1);
    for (int i = 0; i < k.ambient; ++i) u(i, 0) = 1;
    return u;
  }
  return RatMat::identity(k.ambient);
}

ZeroOnePolytope named_polytope(const std::string& name) {
  if (name.size() == 4 && name.rfind("cor", 0) == 0 && name[3] >= '1' && name[3] <= '5') {
    return correlation_polytope(name[3] - '0');
  }
  throw std::invalid_argument("unknown polytope '" + name + "' (expected cor1..cor5)");
}

Json extension_json(const CpExtension& e, bool exact) {
  Json j;
  j["n"] = e.n;
  j["m"] = e.m;
  j["cone"] = json_cone(e.cone);
  j["proper"] = e.proper;
  Json rows = Json::array();
  for (std::size_t i = 0; i < e.constraint_mats.size(); ++i) {
    Json row;
    row["matrix"] = json_matrix(e.constraint_mats[i], exact);
    row["rhs"] = json_number(e.constraint_rhs[i], exact);
    rows.push_back(std::move(row));
  }
  j["constraints"] = std::move(rows);
  Json proj = Json::array();
  for (const auto& [bi, bj] : e.projection) proj.push_back(Json::array({bi, bj}));
  j["projection"] = std::move(proj);
  return j;
}

std::string extension_text(const CpExtension& e) {
  std::ostringstream os;
  os << "completely positive lift of COR(" << e.n << ")\n"
     << "cone: " << cone_kind_name(e.cone.kind) << ", side " << e.m << "\n"
     << "constraints: " << e.constraint_mats.size() << "\n"
     << "projection (coordinate -> lifted entry):\n";
  const auto coords = sym_coords(e.n);
  for (std::size_t t = 0; t < e.projection.size(); ++t) {
    os << "  z" << (coords[t].first + 1) << (coords[t].second + 1) << " -> Y("
       << e.projection[t].first << "," << e.projection[t].second << ")\n";
  }
  os << "proper: " << (e.proper ? "yes" : "no") << "\n";
  return os.str();
}

// Deduplicated input-block projection of face vertices, first appearance
// first; empty when the face is empty (unlike project_face, which throws).
std::vector<std::vector<int>> projected_prefixes(const CompiledFace& f,
                                                 const std::vector<std::vector<int>>& fv) {
  std::vector<std::vector<int>> result;
  std::set<std::vector<int>> seen;
  for (const auto& v : fv) {
    std::vector<int> prefix(v.begin(), v.begin() + f.inputs);
    if (seen.insert(prefix).second) result.push_back(std::move(prefix));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Verb handlers. Each returns the process exit code and emits one artifact.

struct SlackOpts {
  std::string polytope_name;
  std::string vertices_path;
  OutputOpts out;
};

int cmd_slack(const SlackOpts& o, std::ostream& out, std::ostream& err) {
  if (o.polytope_name.empty() == o.vertices_path.empty()) {
    err << "slack: exactly one of --polytope / --vertices is required\n";
    return 2;
  }
  const ZeroOnePolytope p = o.polytope_name.empty()
                                ? polytope_from_json(load_json_file(o.vertices_path))
                                : named_polytope(o.polytope_name);
  const HRep h = facet_enum(p);
  const RatMat s = slack_matrix(p, h);

  Json j;
  j["polytope"] = json_polytope(p);
  j["hrep"] = json_hrep(h, o.out.exact);
  j["slack"] = json_matrix(s, o.out.exact);

  std::ostringstream t;
  t << "polytope: dim " << p.dim << ", " << p.vertices.size() << " vertices\n"
    << "inequalities (A x >= b): " << h.a.rows() << "\n"
    << text_rows(h.a, h.b, o.out.exact) << "equalities (A x = b): " << h.eq_a.rows() << "\n";
  if (h.eq_a.rows() > 0) t << text_rows(h.eq_a, h.eq_b, o.out.exact);
  t << "slack (vertices x facets):\n" << text_matrix(s, o.out.exact);

  emit(o.out, j, t.str(), out);
  return 0;
}

struct DecomposeOpts {
  std::string path;
  OutputOpts out;
};

int cmd_decompose(const DecomposeOpts& o, std::ostream& out, std::ostream& err) {
  (void)err;
  const MeasurementFile mf = measurement_from_json(load_json_file(o.path));
  const DecomposeResult r = decompose_measurement(mf.system, mf.measurement);
  const bool ex = o.out.exact;

  Json j;
  j["cone"] = json_cone(mf.system.cone);
  j["unit"] = json_element(mf.system.cone, mf.system.unit, ex);
  Json refined = Json::array();
  for (const auto& e : r.refined.effects) refined.push_back(json_element(mf.system.cone, e, ex));
  j["refined_effects"] = std::move(refined);
  j["outcome_map"] = r.outcome_map;
  Json parts = Json::array();
  for (const auto& wp : r.mixture.parts) {
    Json part;
    part["weight"] = json_number(wp.weight, ex);
    Json effects = Json::array();
    for (const auto& e : wp.part.effects) effects.push_back(json_element(mf.system.cone, e, ex));
    part["effects"] = std::move(effects);
    parts.push_back(std::move(part));
  }
  j["mixture"] = std::move(parts);

  std::ostringstream t;
  t << "system: " << cone_kind_name(mf.system.cone.kind) << ", ambient "
    << mf.system.cone.ambient << " (gpt dim " << mf.system.gpt_dim() << ")\n"
    << "input effects: " << mf.measurement.effects.size() << ", refined outcomes: "
    << r.refined.effects.size() << "\n"
    << "mixture parts: " << r.mixture.parts.size() << "\n";
  for (std::size_t k = 0; k < r.mixture.parts.size(); ++k) {
    const auto& wp = r.mixture.parts[k];
    int nonzero = 0;
    for (const auto& e : wp.part.effects)
      if (max_abs_entry(e) != 0) ++nonzero;
    t << "  part " << (k + 1) << ": weight " << render_rat(wp.weight, ex) << ", "
      << nonzero << " nonzero extremal effects\n";
  }

  emit(o.out, j, t.str(), out);
  return 0;
}

struct CapacityOpts {
  std::string cone_name = "orthant";
  int dim = 0;
  int inputs = 0;    // 0 = default to dim
  int outcomes = 0;  // 0 = default to dim
  int restarts = 16;
  std::uint64_t seed = 0;
  OutputOpts out;
};

int cmd_capacity(const CapacityOpts& o, std::ostream& out, std::ostream& err) {
  (void)err;
  const GptSystem sys = default_gpt_system(cone_kind_from_name(o.cone_name), o.dim);
  const int kin = o.inputs > 0 ? o.inputs : o.dim;
  const int kout = o.outcomes > 0 ? o.outcomes : o.dim;
  const CapacityResult r = holevo_capacity_lower(sys, kin, kout, o.restarts, o.seed);
  const double bound = capacity_bound(sys);
  const bool ex = o.out.exact;

  Json j;
  j["cone"] = json_cone(sys.cone);
  j["gpt_dim"] = sys.gpt_dim();
  j["inputs"] = kin;
  j["outcomes"] = kout;
  j["restarts"] = o.restarts;
  j["seed"] = o.seed;
  j["information"] = r.information;
  j["bound"] = bound;
  j["restart_index"] = r.restart_index;
  j["prior"] = r.ensemble.prior;
  Json states = Json::array();
  for (const auto& s : r.ensemble.states) states.push_back(json_element(sys.cone, s, ex));
  j["states"] = std::move(states);
  Json effects = Json::array();
  for (const auto& e : r.measurement.effects) effects.push_back(json_element(sys.cone, e, ex));
  j["effects"] = std::move(effects);

  std::ostringstream t;
  t << "cone: " << cone_kind_name(sys.cone.kind) << ", ambient " << o.dim << " (gpt dim "
    << sys.gpt_dim() << ")\n"
    << "inputs: " << kin << ", outcomes: " << kout << ", restarts: " << o.restarts
    << ", seed: " << o.seed << "\n"
    << "I = " << render_double(r.information) << "\n"
    << "bound = " << render_double(bound) << "\n"
    << "restart: " << r.restart_index << (r.restart_index < 0 ? " (canonical)" : "") << "\n";

  emit(o.out, j, t.str(), out);
  return 0;
}

struct SimulateOpts {
  std::string path;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  OutputOpts out;
};

int cmd_simulate(const SimulateOpts& o, std::ostream& out, std::ostream& err) {
  (void)err;
  const ConeFactorization f = factorization_from_json(load_json_file(o.path));
  validate_factorization(f);
  const OneWayProtocol p = protocol_from_factorization(f, unit_for(f.cone));
  const SimulationResult r = simulate(p, o.samples, o.seed);

  double max_dev = 0.0;
  for (int x = 0; x < r.exact.rows(); ++x)
    for (int y = 0; y < r.exact.cols(); ++y)
      max_dev = std::max(max_dev, std::abs(to_double(r.exact(x, y)) - r.empirical(x, y)));

  Json j;
  j["cone"] = json_cone(f.cone);
  j["lambda"] = json_number(p.lambda, o.out.exact);
  j["mu"] = json_number(p.mu, o.out.exact);
  j["samples"] = r.samples;
  j["seed"] = o.seed;
  j["exact"] = json_matrix(r.exact, o.out.exact);
  j["empirical"] = json_matrix(r.empirical);
  j["max_abs_dev"] = max_dev;

  std::ostringstream t;
  t << "cone: " << cone_kind_name(f.cone.kind) << ", states: " << f.states.size()
    << ", responses: " << f.responses.size() << "\n"
    << "lambda = " << render_rat(p.lambda, o.out.exact)
    << ", mu = " << render_rat(p.mu, o.out.exact) << "\n"
    << "exact expectations:\n" << text_matrix(r.exact, o.out.exact)
    << "empirical means (" << r.samples << " samples, seed " << o.seed << "):\n"
    << text_matrix(r.empirical) << "max |exact - empirical| = " << render_double(max_dev)
    << "\n";

  emit(o.out, j, t.str(), out);
  return 0;
}

struct FactorizeCorOpts {
  int n = 0;
  double tol = 1e-6;
  OutputOpts out;
};

int cmd_factorize_cor(const FactorizeCorOpts& o, std::ostream& out, std::ostream& err) {
  const CorFactorization cf = factorize_cor_slack(o.n, o.tol);
  const bool ex = o.out.exact;

  Json j;
  j["n"] = o.n;
  j["tol"] = o.tol;
  j["polytope"] = json_polytope(cf.polytope);
  j["hrep"] = json_hrep(cf.facets, ex);
  j["slack"] = json_matrix(cf.slack, ex);
  j["factorization"] = json_factorization(cf.factorization, ex);
  Json duals = Json::array();
  for (const auto& ds : cf.duals) {
    Json d;
    d["alpha"] = json_number(ds.solution.alpha, ex);
    d["beta"] = json_vector(ds.solution.beta, ex);
    d["gamma"] = json_vector(ds.solution.gamma, ex);
    d["delta"] = json_vector(ds.solution.delta, ex);
    d["objective"] = json_number(ds.objective, ex);
    d["kappa"] = json_number(ds.kappa, ex);
    d["gap"] = json_number(ds.objective - ds.kappa, ex);
    d["copositivity_margin"] = json_number(ds.copositivity_margin, ex);
    d["cuts"] = ds.cuts;
    d["rounds"] = ds.rounds;
    duals.push_back(std::move(d));
  }
  j["duals"] = std::move(duals);
  j["max_abs_err"] = json_number(cf.max_abs_err, ex);
  j["report"] = report_json(cf.report);

  std::ostringstream t;
  t << "COR(" << o.n << "): " << cf.polytope.vertices.size() << " vertices, "
    << cf.facets.a.rows() << " facets, lift side " << (1 + 2 * o.n) << "\n";
  for (std::size_t f = 0; f < cf.duals.size(); ++f) {
    const auto& ds = cf.duals[f];
    t << "  facet " << (f + 1) << ": objective " << render_rat(ds.objective, ex) << ", kappa "
      << rat_to_string(ds.kappa) << ", gap " << render_rat(ds.objective - ds.kappa, ex)
      << ", margin " << render_rat(ds.copositivity_margin, ex) << ", cuts " << ds.cuts
      << ", rounds " << ds.rounds << "\n";
  }
  t << "max |<Y,M> - S| = " << render_rat(cf.max_abs_err, ex) << "\n"
    << "verification: " << (cf.report.ok() ? "PASS" : "FAIL") << " (" << cf.report.note << ")\n";

  emit(o.out, j, t.str(), out);
  if (!cf.report.ok()) {
    Json diag;
    diag["error"]["command"] = "factorize-cor";
    diag["error"]["invariant"] = "cone factorization verification failed: " + cf.report.note;
    err << diag.dump(2) << "\n";
    return 1;
  }
  return 0;
}

struct CpExtendOpts {
  int n = 0;
  std::string circuit_path;
  OutputOpts out;
};

int cmd_cp_extend(const CpExtendOpts& o, std::ostream& out, std::ostream& err) {
  if ((o.n > 0) == !o.circuit_path.empty()) {
    err << "cp-extend: exactly one of --n / --circuit is required\n";
    return 2;
  }
  if (o.n > 0) {
    const CpExtension e = cp_extension_constraints(o.n);
    emit(o.out, extension_json(e, o.out.exact), extension_text(e), out);
    return 0;
  }
  const NorCircuit c = parse_netlist_file(o.circuit_path);
  const CircuitExtension ce = cp_extension_of_definable(c);
  Json j = extension_json(ce.program, o.out.exact);
  Json face;
  face["inputs"] = ce.face.inputs;
  face["n"] = ce.face.n;
  Json eqs = Json::array();
  for (const auto& eq : ce.face.equations) {
    Json e;
    e["coeffs"] = json_vector(eq.coeffs, o.out.exact);
    e["rhs"] = json_number(eq.rhs, o.out.exact);
    eqs.push_back(std::move(e));
  }
  face["equations"] = std::move(eqs);
  face["wire_to_index"] = ce.face.wire_to_index;
  j["face"] = std::move(face);

  std::ostringstream t;
  t << extension_text(ce.program) << "face equations (" << ce.face.equations.size() << "):\n";
  for (const auto& eq : ce.face.equations) t << "  " << eq_text(eq, ce.face.n) << "\n";

  emit(o.out, j, t.str(), out);
  return 0;
}

struct CompileCircuitOpts {
  std::string path;
  bool verify = false;
  bool cp_extend = false;
  OutputOpts out;
};

int cmd_compile_circuit(const CompileCircuitOpts& o, std::ostream& out, std::ostream& err) {
  (void)err;
  const NorCircuit c = parse_netlist_file(o.path);
  const CompiledFace face = compile_face(c);
  const auto fv = face_vertices(face);
  const auto projected = projected_prefixes(face, fv);
  const bool ex = o.out.exact;

  Json j;
  j["inputs"] = face.inputs;
  j["n"] = face.n;
  j["wire_to_index"] = face.wire_to_index;
  Json eqs = Json::array();
  for (const auto& eq : face.equations) {
    Json e;
    e["coeffs"] = json_vector(eq.coeffs, ex);
    e["rhs"] = json_number(eq.rhs, ex);
    eqs.push_back(std::move(e));
  }
  j["equations"] = std::move(eqs);
  j["face_vertices"] = fv;
  j["projection"] = projected;

  bool pass = true;
  std::vector<std::vector<int>> accepted;
  if (o.verify) {
    accepted = vertex_set(c);
    auto lhs = accepted;
    auto rhs = projected;
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    pass = lhs == rhs;
    Json v;
    v["circuit_vertices"] = accepted;
    v["projected"] = projected;
    v["pass"] = pass;
    j["verify"] = std::move(v);
  }
  if (o.cp_extend) {
    const CircuitExtension ce = cp_extension_of_definable(c);
    j["extension"] = extension_json(ce.program, ex);
  }

  std::ostringstream t;
  t << "inputs: " << face.inputs << ", coordinates: " << face.n << "\n"
    << "equations (" << face.equations.size() << "):\n";
  for (const auto& eq : face.equations) t << "  " << eq_text(eq, face.n) << "\n";
  t << "face vertices: " << set_text(fv) << "\n"
    << "projection: " << set_text(projected) << "\n";

  if (o.verify) {
    out << "circuit vertices: " << set_text(accepted) << "\n"
        << "projected:        " << set_text(projected) << "\n"
        << "verify: " << (pass ? "PASS" : "FAIL") << "\n";
  }
  emit(o.out, j, t.str(), out);
  return pass ? 0 : 1;
}

struct VerifyFactorizationOpts {
  std::string matrix_path;
  std::string factorization_path;
  double tol = 1e-6;
  OutputOpts out;
};

int cmd_verify_factorization(const VerifyFactorizationOpts& o, std::ostream& out,
                             std::ostream& err) {
  Json mj = load_json_file(o.matrix_path);
  // Accept a bare matrix object or any artifact that carries one as "slack".
  if (mj.is_object() && mj.contains("slack")) mj = mj["slack"];
  const RatMat s = matrix_from_json(mj);
  const ConeFactorization f = factorization_from_json(load_json_file(o.factorization_path));
  const auto* t_certs = f.state_certs.empty() ? nullptr : &f.state_certs;
  const auto* u_certs = f.response_certs.empty() ? nullptr : &f.response_certs;
  const FactorizationReport r =
      verify_cone_factorization(s, f.states, f.responses, f.cone, o.tol, t_certs, u_certs);

  Json j = report_json(r);
  j["tol"] = o.tol;

  std::ostringstream t;
  t << "cone: " << cone_kind_name(f.cone.kind) << ", states: " << f.states.size()
    << ", responses: " << f.responses.size() << "\n"
    << "max |<T,U> - S| = " << render_double(to_double(r.max_abs_err)) << " (tol "
    << render_double(o.tol) << ")\n"
    << "pairing: " << (r.pairing_ok ? "ok" : "FAIL") << ", membership: "
    << (r.membership_ok ? "ok" : "FAIL") << " (not_member " << r.not_member << ", unknown "
    << r.unknown << ")\n"
    << "verification: " << (r.ok() ? "PASS" : "FAIL") << "\n";
  if (!r.note.empty()) t << "note: " << r.note << "\n";

  emit(o.out, j, t.str(), out);
  if (!r.ok()) {
    Json diag;
    diag["error"]["command"] = "verify-factorization";
    diag["error"]["invariant"] =
        !r.pairing_ok ? "pairing |<T,U> - S| exceeds tolerance" : "cone membership not certified";
    if (!r.note.empty()) diag["error"]["note"] = r.note;
    err << diag.dump(2) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cones, correlation polytopes, capacity bounds, and completely positive lifts"};
  app.name("conekit");
  app.require_subcommand(1);

  SlackOpts slack_o;
  auto* slack_cmd = app.add_subcommand(
      "slack", "Facet enumeration and exact slack matrix of a 0/1 polytope");
  auto* opt_poly = slack_cmd->add_option("--polytope", slack_o.polytope_name,
                                         "Built-in polytope name (cor1..cor5)");
  auto* opt_verts =
      slack_cmd->add_option("--vertices", slack_o.vertices_path, "Vertex-list JSON file");
  opt_poly->excludes(opt_verts);
  opt_verts->excludes(opt_poly);
  add_output_opts(slack_cmd, &slack_o.out);

  DecomposeOpts dec_o;
  auto* dec_cmd = app.add_subcommand("decompose-measurement",
                                     "Decompose a measurement into extremal parts");
  dec_cmd->add_option("measurement", dec_o.path, "Measurement JSON file")->required();
  add_output_opts(dec_cmd, &dec_o.out);

  CapacityOpts cap_o;
  auto* cap_cmd =
      app.add_subcommand("capacity", "Seeded lower-bound search for one-shot capacity");
  cap_cmd->add_option("--cone", cap_o.cone_name, "State cone")
      ->check(CLI::IsMember({"orthant", "psd"}))
      ->capture_default_str();
  cap_cmd->add_option("--dim", cap_o.dim, "Ambient dimension (vector length / matrix side)")
      ->required()
      ->check(CLI::PositiveNumber);
  cap_cmd->add_option("--inputs", cap_o.inputs, "Ensemble size (default: --dim)")
      ->check(CLI::PositiveNumber);
  cap_cmd->add_option("--outcomes", cap_o.outcomes, "Measurement outcomes (default: --dim)")
      ->check(CLI::PositiveNumber);
  cap_cmd->add_option("--restarts", cap_o.restarts, "Search restarts")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cap_cmd->add_option("--seed", cap_o.seed, "Search seed")->capture_default_str();
  add_output_opts(cap_cmd, &cap_o.out);

  SimulateOpts sim_o;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Monte Carlo the one-way protocol of a cone factorization");
  sim_cmd->add_option("--factorization", sim_o.path, "Factorization JSON file")->required();
  sim_cmd->add_option("--samples", sim_o.samples, "Runs per matrix cell")
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim_o.seed, "Sampling seed")->capture_default_str();
  add_output_opts(sim_cmd, &sim_o.out);

  FactorizeCorOpts fc_o;
  auto* fc_cmd = app.add_subcommand(
      "factorize-cor", "Completely positive factorization of a COR(n) slack matrix");
  fc_cmd->add_option("--n", fc_o.n, "Correlation polytope size (1..3)")
      ->required()
      ->check(CLI::Range(1, 3));
  fc_cmd->add_option("--tol", fc_o.tol, "Per-facet objective tolerance")->capture_default_str();
  add_output_opts(fc_cmd, &fc_o.out);

  CpExtendOpts ce_o;
  auto* ce_cmd = app.add_subcommand(
      "cp-extend", "Affine lift description over the completely positive cone");
  auto* opt_n = ce_cmd->add_option("--n", ce_o.n, "Correlation polytope size")
                    ->check(CLI::Range(1, 1000));
  auto* opt_circ =
      ce_cmd->add_option("--circuit", ce_o.circuit_path, "NOR netlist file to lift");
  opt_n->excludes(opt_circ);
  opt_circ->excludes(opt_n);
  add_output_opts(ce_cmd, &ce_o.out);

  CompileCircuitOpts cc_o;
  auto* cc_cmd =
      app.add_subcommand("compile-circuit", "Compile a NOR netlist to a face of COR(n)");
  cc_cmd->add_option("netlist", cc_o.path, "Netlist file")->required();
  cc_cmd->add_flag("--verify", cc_o.verify,
                   "Check the projected face against circuit evaluation and print PASS/FAIL");
  cc_cmd->add_flag("--cp-extend", cc_o.cp_extend, "Include the lifted conic description");
  add_output_opts(cc_cmd, &cc_o.out);

  VerifyFactorizationOpts vf_o;
  auto* vf_cmd = app.add_subcommand("verify-factorization",
                                    "Check a cone factorization against a slack matrix");
  vf_cmd->add_option("--matrix", vf_o.matrix_path, "Slack matrix JSON file")->required();
  vf_cmd->add_option("--factorization", vf_o.factorization_path, "Factorization JSON file")
      ->required();
  vf_cmd->add_option("--tol", vf_o.tol, "Pairing/membership tolerance")->capture_default_str();
  add_output_opts(vf_cmd, &vf_o.out);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("conekit");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_store.size());
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const std::string verb =
      app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
  try {
    if (slack_cmd->parsed()) return cmd_slack(slack_o, out, err);
    if (dec_cmd->parsed()) return cmd_decompose(dec_o, out, err);
    if (cap_cmd->parsed()) return cmd_capacity(cap_o, out, err);
    if (sim_cmd->parsed()) return cmd_simulate(sim_o, out, err);
    if (fc_cmd->parsed()) return cmd_factorize_cor(fc_o, out, err);
    if (ce_cmd->parsed()) return cmd_cp_extend(ce_o, out, err);
    if (cc_cmd->parsed()) return cmd_compile_circuit(cc_o, out, err);
    if (vf_cmd->parsed()) return cmd_verify_factorization(vf_o, out, err);
  } catch (const std::exception& e) {
    Json diag;
    diag["error"]["command"] = verb;
    diag["error"]["invariant"] = e.what();
    err << diag.dump(2) << "\n";
    return 1;
  }
  err << app.help();
  return 2;
}

}  // namespace conekit
