#pragma once

#include <string>
#include <vector>

#include "conekit/cpext.hpp"
#include "conekit/matrix.hpp"
#include "conekit/polytopes.hpp"

namespace conekit {

// Wire encoding shared by all circuit types: 0..d-1 are the inputs, d + k is
// gate k in list order, and the two negative sentinels are baked constants.
constexpr int kConstZero = -1;
constexpr int kConstOne = -2;

inline bool is_constant_wire(int w) { return w < 0; }
inline int constant_wire_value(int w) { return w == kConstOne ? 1 : 0; }

struct NorGate {
  int a = kConstZero;
  int b = kConstZero;
};

// NOR-only combinational circuit. Gates are topologically ordered (each
// operand is a constant, an input, or an earlier gate); advice bits enter as
// constants. Gates whose operands are both constants are expected to be
// folded away (fold_constants enforces the invariant).
struct NorCircuit {
  int inputs = 0;
  std::vector<NorGate> gates;
  std::vector<std::string> gate_names;  // empty, or one name per gate
  int output = kConstZero;
};

// Shape and topological-order checks; throws on a gate that reads a wire not
// yet defined (which is what a cycle looks like in list form).
void validate_circuit(const NorCircuit& c);

// Remove every gate whose operands are both constants, rewiring readers to
// the gate's constant value; cascades until fixpoint. Output may become a
// constant.
NorCircuit fold_constants(const NorCircuit& c);

enum class GateOp { Nor, Not, Or, And };

struct BoolGate {
  GateOp op = GateOp::Nor;
  int a = kConstZero;
  int b = kConstZero;  // ignored for Not
};

struct BoolCircuit {
  int inputs = 0;
  std::vector<BoolGate> gates;
  int output = kConstZero;
};

// Rewrite over NOR only: NOT(a) = NOR(a,a), OR(a,b) = NOT(NOR(a,b)),
// AND(a,b) = NOR(NOT a, NOT b). At most 3 NOR gates per source gate;
// semantics preserved on every input. Result is constant-folded.
NorCircuit lower_to_nor(const BoolCircuit& c);

// Netlist text: one directive per line, '#' comments. `inputs <d>`,
// `advice <bitstring>`, `gate <name> NOR <op> <op>`, `output <wire>`.
// Operands: y<k> (input k), x<k> (advice bit k, a baked constant), c0/c1,
// or the name of an earlier gate. Result is constant-folded.
NorCircuit parse_netlist(const std::string& text);
NorCircuit parse_netlist_file(const std::string& path);

// Forward evaluation on a 0/1 input assignment.
int evaluate(const NorCircuit& c, const std::vector<int>& y);

// All accepted inputs {y : C(y) = 1}, in counting order (y_i = bit i).
// Requires inputs <= 16. May be empty.
std::vector<std::vector<int>> vertex_set(const NorCircuit& c);

// One valid hyperplane of the correlation polytope, over the product
// coordinates of COR(n) in sym_coords order: coeffs . z = rhs, with
// max over vertices of the left side equal to rhs.
struct FaceEquation {
  RatVec coeffs;
  Rat rhs{0};
};

// lhs at the vertex aa^T, exact.
Rat equation_value(const FaceEquation& eq, const std::vector<int>& a);

// The face of COR(n), n = inputs + surviving gates, cut out by one equation
// per gate plus the output equation. Index map: inputs take 1..d, gates
// follow in list order, and the output gate is moved to index n (so the
// output equation is always z_nn = 1; an input output pins z_ii = 1
// instead).
struct CompiledFace {
  int inputs = 0;
  int n = 0;
  std::vector<FaceEquation> equations;
  std::vector<int> wire_to_index;  // circuit wire -> 1-based z index
};

// Gate relations as correlation-polytope equations:
//   NOR(i,j):  z_ii + z_jj - z_ij + z_kk - 2 z_ik - 2 z_jk = 1
//   NOR(i,i):  z_ii + z_kk - 4 z_ik = 1
//   NOR(i,c0): z_ii + z_kk - 2 z_ik = 1
//   NOR(i,c1): z_kk = 0
// plus the output pin. Rejects a constant output (the polytope degenerates)
// and circuits with unfolded two-constant gates.
CompiledFace compile_face(const NorCircuit& c);

// {a in {0,1}^n : aa^T satisfies every equation}, counting order. n <= 16.
std::vector<std::vector<int>> face_vertices(const CompiledFace& f);
std::vector<std::vector<int>> face_vertices_serial(const CompiledFace& f);    // reference kernel
std::vector<std::vector<int>> face_vertices_parallel(const CompiledFace& f);  // OpenMP kernel

// Projection of the face to the input block (coordinates z_11..z_dd),
// deduplicated. Throws when the face is empty.
ZeroOnePolytope project_face(const CompiledFace& f);

// Conic-program description of the accepted-input polytope: the affine lift
// description of COR(n) with the face equations appended as constraints on
// the lifted block. Throws when the face (hence the polytope) is empty.
struct CircuitExtension {
  CompiledFace face;
  CpExtension program;
};
CircuitExtension cp_extension_of_definable(const NorCircuit& c);

}  // namespace conekit
