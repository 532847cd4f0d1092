#include "conekit/circuits.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "conekit/parallel.hpp"

namespace conekit {

namespace {

int wire_count(const NorCircuit& c) { return c.inputs + static_cast<int>(c.gates.size()); }

void check_operand(int w, int defined, const char* who) {
  if (is_constant_wire(w)) {
    if (w != kConstZero && w != kConstOne) {
      throw std::invalid_argument(std::string(who) + ": unknown constant sentinel");
    }
    return;
  }
  if (w >= defined) {
    throw std::invalid_argument(std::string(who) +
                                ": gate reads a wire that is not yet defined (cyclic or out of range)");
  }
}

}  // namespace

void validate_circuit(const NorCircuit& c) {
  if (c.inputs < 1) throw std::invalid_argument("circuit: at least one input is required");
  if (!c.gate_names.empty() && c.gate_names.size() != c.gates.size()) {
    throw std::invalid_argument("circuit: gate_names must be empty or one per gate");
  }
  for (size_t k = 0; k < c.gates.size(); ++k) {
    const int defined = c.inputs + static_cast<int>(k);
    check_operand(c.gates[k].a, defined, "circuit");
    check_operand(c.gates[k].b, defined, "circuit");
  }
  check_operand(c.output, wire_count(c), "circuit output");
}

NorCircuit fold_constants(const NorCircuit& c) {
  validate_circuit(c);
  NorCircuit out;
  out.inputs = c.inputs;
  std::vector<int> remap(static_cast<size_t>(wire_count(c)), 0);
  for (int i = 0; i < c.inputs; ++i) remap[static_cast<size_t>(i)] = i;
  const auto resolve = [&](int w) { return is_constant_wire(w) ? w : remap[static_cast<size_t>(w)]; };
  for (size_t k = 0; k < c.gates.size(); ++k) {
    const int a = resolve(c.gates[k].a);
    const int b = resolve(c.gates[k].b);
    const size_t w = static_cast<size_t>(c.inputs) + k;
    if (is_constant_wire(a) && is_constant_wire(b)) {
      const int v = (constant_wire_value(a) == 0 && constant_wire_value(b) == 0) ? 1 : 0;
      remap[w] = v == 1 ? kConstOne : kConstZero;
      continue;
    }
    out.gates.push_back({a, b});
    if (!c.gate_names.empty()) out.gate_names.push_back(c.gate_names[k]);
    remap[w] = out.inputs + static_cast<int>(out.gates.size()) - 1;
  }
  out.output = resolve(c.output);
  return out;
}

NorCircuit lower_to_nor(const BoolCircuit& c) {
  if (c.inputs < 1) throw std::invalid_argument("lower_to_nor: at least one input is required");
  for (size_t k = 0; k < c.gates.size(); ++k) {
    const int defined = c.inputs + static_cast<int>(k);
    check_operand(c.gates[k].a, defined, "lower_to_nor");
    if (c.gates[k].op != GateOp::Not) check_operand(c.gates[k].b, defined, "lower_to_nor");
  }
  check_operand(c.output, c.inputs + static_cast<int>(c.gates.size()), "lower_to_nor output");

  NorCircuit out;
  out.inputs = c.inputs;
  std::vector<int> remap(static_cast<size_t>(c.inputs) + c.gates.size(), 0);
  for (int i = 0; i < c.inputs; ++i) remap[static_cast<size_t>(i)] = i;
  const auto resolve = [&](int w) { return is_constant_wire(w) ? w : remap[static_cast<size_t>(w)]; };
  const auto emit = [&](int a, int b) {
    out.gates.push_back({a, b});
    return out.inputs + static_cast<int>(out.gates.size()) - 1;
  };
  for (size_t k = 0; k < c.gates.size(); ++k) {
    const int a = resolve(c.gates[k].a);
    const size_t w = static_cast<size_t>(c.inputs) + k;
    switch (c.gates[k].op) {
      case GateOp::Nor:
        remap[w] = emit(a, resolve(c.gates[k].b));
        break;
      case GateOp::Not:
        remap[w] = emit(a, a);
        break;
      case GateOp::Or: {
        const int t = emit(a, resolve(c.gates[k].b));
        remap[w] = emit(t, t);
        break;
      }
      case GateOp::And: {
        const int na = emit(a, a);
        const int b = resolve(c.gates[k].b);
        const int nb = emit(b, b);
        remap[w] = emit(na, nb);
        break;
      }
    }
  }
  out.output = resolve(c.output);
  return fold_constants(out);
}

namespace {

bool all_digits(const std::string& s, size_t from) {
  if (from >= s.size()) return false;
  for (size_t i = from; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

bool reserved_wire_name(const std::string& s) {
  if (s == "c0" || s == "c1") return true;
  return (s.size() >= 2 && (s[0] == 'y' || s[0] == 'x') && all_digits(s, 1));
}

}  // namespace

NorCircuit parse_netlist(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  int d = -1;
  bool have_advice = false;
  std::string advice;
  std::vector<NorGate> gates;
  std::vector<std::string> names;
  std::map<std::string, int> gate_wire;
  bool have_output = false;
  int output = kConstZero;

  const auto fail = [&](const std::string& msg) -> void {
    throw std::invalid_argument("netlist line " + std::to_string(lineno) + ": " + msg);
  };
  const auto resolve = [&](const std::string& tok) -> int {
    if (tok == "c0") return kConstZero;
    if (tok == "c1") return kConstOne;
    if (tok.size() >= 2 && (tok[0] == 'y' || tok[0] == 'x') && all_digits(tok, 1)) {
      if (tok.size() > 7) fail("wire index out of range in '" + tok + "'");
      const int k = std::stoi(tok.substr(1));
      if (tok[0] == 'y') {
        if (d < 0) fail("inputs must be declared before use");
        if (k < 1 || k > d) fail("input y" + std::to_string(k) + " out of range");
        return k - 1;
      }
      if (!have_advice) fail("advice referenced but never declared");
      if (k < 1 || k > static_cast<int>(advice.size())) {
        fail("advice bit x" + std::to_string(k) + " out of range");
      }
      return advice[static_cast<size_t>(k - 1)] == '1' ? kConstOne : kConstZero;
    }
    const auto it = gate_wire.find(tok);
    if (it == gate_wire.end()) fail("unknown wire '" + tok + "'");
    return it->second;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string directive;
    if (!(ls >> directive)) continue;  // blank or comment-only line
    if (directive == "inputs") {
      if (d >= 0) fail("duplicate inputs directive");
      if (!(ls >> d) || d < 1) fail("inputs expects a positive count");
    } else if (directive == "advice") {
      if (have_advice) fail("duplicate advice directive");
      if (!(ls >> advice) || advice.empty()) fail("advice expects a bitstring");
      for (char b : advice) {
        if (b != '0' && b != '1') fail("advice bits must be 0 or 1");
      }
      have_advice = true;
    } else if (directive == "gate") {
      if (d < 0) fail("inputs must be declared before gates");
      std::string name, op, ta, tb;
      if (!(ls >> name >> op >> ta >> tb)) fail("gate expects: name NOR operand operand");
      if (op != "NOR") fail("only NOR gates are accepted (got '" + op + "')");
      if (reserved_wire_name(name)) fail("gate name '" + name + "' shadows a reserved wire");
      if (gate_wire.count(name)) fail("duplicate gate name '" + name + "'");
      const int a = resolve(ta);
      const int b = resolve(tb);
      gates.push_back({a, b});
      names.push_back(name);
      gate_wire[name] = d + static_cast<int>(gates.size()) - 1;
    } else if (directive == "output") {
      if (have_output) fail("duplicate output directive");
      std::string tok;
      if (!(ls >> tok)) fail("output expects a wire");
      output = resolve(tok);
      have_output = true;
    } else {
      fail("unknown directive '" + directive + "'");
    }
    std::string extra;
    if (ls >> extra) fail("trailing token '" + extra + "'");
  }
  if (d < 1) throw std::invalid_argument("netlist: missing inputs directive");
  if (!have_output) throw std::invalid_argument("netlist: missing output directive");

  NorCircuit c;
  c.inputs = d;
  c.gates = std::move(gates);
  c.gate_names = std::move(names);
  c.output = output;
  return fold_constants(c);
}

NorCircuit parse_netlist_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open netlist file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_netlist(buf.str());
}

namespace {

int forward_eval(const NorCircuit& c, unsigned idx) {
  std::vector<int> val(static_cast<size_t>(wire_count(c)), 0);
  for (int i = 0; i < c.inputs; ++i) val[static_cast<size_t>(i)] = static_cast<int>((idx >> i) & 1u);
  const auto wv = [&](int w) {
    return is_constant_wire(w) ? constant_wire_value(w) : val[static_cast<size_t>(w)];
  };
  for (size_t k = 0; k < c.gates.size(); ++k) {
    val[static_cast<size_t>(c.inputs) + k] =
        (wv(c.gates[k].a) == 0 && wv(c.gates[k].b) == 0) ? 1 : 0;
  }
  return wv(c.output);
}

std::vector<int> idx_to_bits(unsigned idx, int n) {
  std::vector<int> a(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)] = static_cast<int>((idx >> i) & 1u);
  return a;
}

}  // namespace

int evaluate(const NorCircuit& c, const std::vector<int>& y) {
  validate_circuit(c);
  if (static_cast<int>(y.size()) != c.inputs) {
    throw std::invalid_argument("evaluate: expected one value per input");
  }
  unsigned idx = 0;
  for (size_t i = 0; i < y.size(); ++i) {
    if (y[i] != 0 && y[i] != 1) throw std::invalid_argument("evaluate: inputs must be 0/1");
    if (y[i] == 1) idx |= 1u << i;
  }
  return forward_eval(c, idx);
}

std::vector<std::vector<int>> vertex_set(const NorCircuit& c) {
  validate_circuit(c);
  if (c.inputs > 16) throw std::invalid_argument("vertex_set: inputs exceed the enumeration cap (16)");
  const unsigned total = 1u << c.inputs;
  std::vector<std::vector<int>> out;
  for (unsigned idx = 0; idx < total; ++idx) {
    if (forward_eval(c, idx) == 1) out.push_back(idx_to_bits(idx, c.inputs));
  }
  return out;
}

Rat equation_value(const FaceEquation& eq, const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  const auto coords = sym_coords(n);
  if (eq.coeffs.size() != coords.size()) {
    throw std::invalid_argument("equation_value: coefficient count does not match the vertex length");
  }
  Rat v(0);
  for (size_t c = 0; c < coords.size(); ++c) {
    if (eq.coeffs[c] == 0) continue;
    if (a[static_cast<size_t>(coords[c].first)] == 1 && a[static_cast<size_t>(coords[c].second)] == 1) {
      v += eq.coeffs[c];
    }
  }
  return v;
}

CompiledFace compile_face(const NorCircuit& c) {
  validate_circuit(c);
  if (is_constant_wire(c.output)) {
    throw std::invalid_argument(
        "compile_face: the output is a constant, so the accepted set is all or nothing and has no face form");
  }
  for (const NorGate& g : c.gates) {
    if (is_constant_wire(g.a) && is_constant_wire(g.b)) {
      throw std::invalid_argument("compile_face: two-constant gates must be folded away first");
    }
  }
  const int d = c.inputs;
  const int ng = static_cast<int>(c.gates.size());
  CompiledFace f;
  f.inputs = d;
  f.n = d + ng;
  f.wire_to_index.assign(static_cast<size_t>(d + ng), 0);
  for (int i = 0; i < d; ++i) f.wire_to_index[static_cast<size_t>(i)] = i + 1;
  const bool output_is_gate = c.output >= d;
  int next = d + 1;
  for (int k = 0; k < ng; ++k) {
    if (output_is_gate && d + k == c.output) continue;
    f.wire_to_index[static_cast<size_t>(d + k)] = next++;
  }
  if (output_is_gate) f.wire_to_index[static_cast<size_t>(c.output)] = f.n;

  const auto coords = sym_coords(f.n);
  std::vector<std::vector<int>> coord_of(static_cast<size_t>(f.n),
                                         std::vector<int>(static_cast<size_t>(f.n), -1));
  for (size_t cix = 0; cix < coords.size(); ++cix) {
    coord_of[static_cast<size_t>(coords[cix].first)][static_cast<size_t>(coords[cix].second)] =
        static_cast<int>(cix);
    coord_of[static_cast<size_t>(coords[cix].second)][static_cast<size_t>(coords[cix].first)] =
        static_cast<int>(cix);
  }
  const auto add = [&](FaceEquation& eq, int zi, int zj, long v) {
    eq.coeffs[static_cast<size_t>(coord_of[static_cast<size_t>(zi - 1)][static_cast<size_t>(zj - 1)])] +=
        Rat(v);
  };
  const auto fresh = [&]() {
    FaceEquation eq;
    eq.coeffs.assign(coords.size(), Rat(0));
    return eq;
  };

  for (int k = 0; k < ng; ++k) {
    int wa = c.gates[static_cast<size_t>(k)].a;
    int wb = c.gates[static_cast<size_t>(k)].b;
    if (is_constant_wire(wa)) std::swap(wa, wb);  // a constant rides second
    const int zk = f.wire_to_index[static_cast<size_t>(d + k)];
    FaceEquation eq = fresh();
    if (is_constant_wire(wb)) {
      const int zi = f.wire_to_index[static_cast<size_t>(wa)];
      if (constant_wire_value(wb) == 1) {
        add(eq, zk, zk, 1);  // NOR against a hot constant is pinned to zero
        eq.rhs = 0;
      } else {
        add(eq, zi, zi, 1);
        add(eq, zk, zk, 1);
        add(eq, zi, zk, -2);
        eq.rhs = 1;
      }
    } else if (f.wire_to_index[static_cast<size_t>(wa)] == f.wire_to_index[static_cast<size_t>(wb)]) {
      const int zi = f.wire_to_index[static_cast<size_t>(wa)];
      add(eq, zi, zi, 1);
      add(eq, zk, zk, 1);
      add(eq, zi, zk, -4);
      eq.rhs = 1;
    } else {
      const int zi = f.wire_to_index[static_cast<size_t>(wa)];
      const int zj = f.wire_to_index[static_cast<size_t>(wb)];
      add(eq, zi, zi, 1);
      add(eq, zj, zj, 1);
      add(eq, zi, zj, -1);
      add(eq, zk, zk, 1);
      add(eq, zi, zk, -2);
      add(eq, zj, zk, -2);
      eq.rhs = 1;
    }
    f.equations.push_back(std::move(eq));
  }
  FaceEquation out_eq = fresh();
  add(out_eq, f.wire_to_index[static_cast<size_t>(c.output)],
      f.wire_to_index[static_cast<size_t>(c.output)], 1);
  out_eq.rhs = 1;
  f.equations.push_back(std::move(out_eq));
  return f;
}

namespace {

struct IntEquation {
  std::vector<std::tuple<int, int, long long>> terms;  // bit positions + coefficient
  long long rhs = 0;
};

long long small_int(const Rat& q, const char* who) {
  if (q.get_den() != 1) throw std::invalid_argument(std::string(who) + ": coefficients must be integers");
  if (!q.get_num().fits_slong_p()) {
    throw std::invalid_argument(std::string(who) + ": coefficient out of range");
  }
  return q.get_num().get_si();
}

std::vector<IntEquation> integer_equations(const CompiledFace& f) {
  if (f.n < 1 || f.n > 16) {
    throw std::invalid_argument("face_vertices: n must be between 1 and 16");
  }
  const auto coords = sym_coords(f.n);
  std::vector<IntEquation> eqs;
  eqs.reserve(f.equations.size());
  for (const FaceEquation& eq : f.equations) {
    if (eq.coeffs.size() != coords.size()) {
      throw std::invalid_argument("face_vertices: equation width does not match n");
    }
    IntEquation ie;
    ie.rhs = small_int(eq.rhs, "face_vertices");
    for (size_t c = 0; c < coords.size(); ++c) {
      if (eq.coeffs[c] == 0) continue;
      ie.terms.emplace_back(coords[c].first, coords[c].second,
                            small_int(eq.coeffs[c], "face_vertices"));
    }
    eqs.push_back(std::move(ie));
  }
  return eqs;
}

bool face_vertex_ok(const std::vector<IntEquation>& eqs, unsigned idx) {
  for (const IntEquation& eq : eqs) {
    long long v = 0;
    for (const auto& [i, j, cf] : eq.terms) {
      if ((idx >> i) & 1u && (idx >> j) & 1u) v += cf;
    }
    if (v != eq.rhs) return false;
  }
  return true;
}

}  // namespace

std::vector<std::vector<int>> face_vertices_serial(const CompiledFace& f) {
  const auto eqs = integer_equations(f);
  const unsigned total = 1u << f.n;
  std::vector<std::vector<int>> out;
  for (unsigned idx = 0; idx < total; ++idx) {
    if (face_vertex_ok(eqs, idx)) out.push_back(idx_to_bits(idx, f.n));
  }
  return out;
}

std::vector<std::vector<int>> face_vertices_parallel(const CompiledFace& f) {
  const auto eqs = integer_equations(f);
  const std::int64_t total = std::int64_t(1) << f.n;
  std::vector<char> keep(static_cast<size_t>(total), 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    keep[static_cast<size_t>(idx)] = face_vertex_ok(eqs, static_cast<unsigned>(idx)) ? 1 : 0;
  }
  // Deterministic union: collect in counting order.
  std::vector<std::vector<int>> out;
  for (std::int64_t idx = 0; idx < total; ++idx) {
    if (keep[static_cast<size_t>(idx)]) out.push_back(idx_to_bits(static_cast<unsigned>(idx), f.n));
  }
  return out;
}

std::vector<std::vector<int>> face_vertices(const CompiledFace& f) {
  if (f.n >= 12 && parallel_enabled()) return face_vertices_parallel(f);
  return face_vertices_serial(f);
}

ZeroOnePolytope project_face(const CompiledFace& f) {
  if (f.inputs < 1 || f.inputs > f.n) {
    throw std::invalid_argument("project_face: malformed input block");
  }
  const auto verts = face_vertices(f);
  if (verts.empty()) {
    throw std::runtime_error("project_face: the compiled face is empty (the accepted set has no points)");
  }
  std::vector<RatVec> pts;
  std::set<std::vector<int>> seen;
  for (const auto& a : verts) {
    std::vector<int> p(a.begin(), a.begin() + f.inputs);
    if (!seen.insert(p).second) continue;
    RatVec rp;
    rp.reserve(p.size());
    for (int b : p) rp.push_back(Rat(b));
    pts.push_back(std::move(rp));
  }
  return make_zero_one_polytope(f.inputs, pts);
}

CircuitExtension cp_extension_of_definable(const NorCircuit& c) {
  CircuitExtension out{compile_face(c), {}};
  if (face_vertices(out.face).empty()) {
    throw std::runtime_error("cp_extension_of_definable: the accepted set is empty");
  }
  out.program = cp_extension_constraints(out.face.n);
  const auto coords = sym_coords(out.face.n);
  for (const FaceEquation& eq : out.face.equations) {
    RatMat a(out.program.m, out.program.m);
    for (size_t cix = 0; cix < coords.size(); ++cix) {
      if (eq.coeffs[cix] == 0) continue;
      const int i = coords[cix].first;
      const int j = coords[cix].second;
      if (i == j) {
        a(1 + i, 1 + i) = eq.coeffs[cix];
      } else {
        a(1 + i, 1 + j) = eq.coeffs[cix] / Rat(2);
        a(1 + j, 1 + i) = a(1 + i, 1 + j);
      }
    }
    out.program.constraint_mats.push_back(std::move(a));
    out.program.constraint_rhs.push_back(eq.rhs);
  }
  return out;
}

}  // namespace conekit
