#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "z2sim/pauli.hpp"

namespace z2sim {

// Rotation gates follow the half-angle convention: rot_z(a) = exp(-i a/2 Z),
// rot_zz(a) = exp(-i a/2 Z⊗Z), rot_axis_zy(a,theta) = exp(-i a/2 (cos·Z+sin·Y)).
enum class GateKind {
    H,
    PauliX,
    PauliY,
    PauliZ,
    S,
    Sdg,
    RotZ,
    RotY,
    RotZZ,
    RotAxisZY,
    CNot,        // qubits = {control, target}
    CZ,
    CY,          // qubits = {control, target}
    ParityCtrlX  // qubits = {parity..., target}: P+ σx_t + P-, P± = (1 ± sign·ΠZ)/2
};

const char* gate_name(GateKind k);
GateKind gate_kind_from_name(const std::string& name);

struct Gate {
    GateKind kind;
    std::vector<int> qubits;
    double angle = 0.0;
    double axis_theta = 0.0;  // RotAxisZY only
    int sign = 1;             // ParityCtrlX only
    std::string label;

    int arity() const { return static_cast<int>(qubits.size()); }
};

Gate make_gate(GateKind k, std::vector<int> qubits, double angle = 0.0,
               double axis_theta = 0.0, int sign = 1, std::string label = {});

struct Circuit {
    int register_size = 0;
    std::vector<Gate> gates;  // application order: gates[0] acts first

    Circuit() = default;
    explicit Circuit(int nq) : register_size(nq) {}
    Circuit& add(Gate g);
    std::size_t size() const { return gates.size(); }
};

// Dense matrix of the gate on its own qubits; qubits[i] is local bit i.
Eigen::MatrixXcd gate_matrix(const Gate& g);

// In-place statevector kernels. Deterministic for any register size.
void apply_gate(const Gate& g, Eigen::VectorXcd& state);
void apply_circuit(const Circuit& c, Eigen::VectorXcd& state);

// Full 2^n x 2^n matrix of the circuit (columns = images of basis states).
Eigen::MatrixXcd circuit_matrix(const Circuit& c, int cap = kDenseCap);

Circuit inverse(const Circuit& c);

// Heisenberg propagation C A C† through the circuit, gate by gate. Each
// gate's action on a Pauli sub-word is derived once from its dense matrix by
// Pauli-basis decomposition and memoized; Clifford-like gates (everything but
// the rotations) map words to single words with coefficients snapped to
// {±1, ±i}, so symbolic pipelines stay exact.
OperatorSum conjugate_by_gates(const OperatorSum& a, const Circuit& c);

// Greedy layer assignment: a gate joins the earliest layer such that it
// commutes (exact dense check on the support union) with every gate in that
// layer and in all later layers. Returns the number of layers.
int circuit_layer_count(const Circuit& c);

// Plain text, one gate per line: "name q=0,1 angle=... theta=... sign=...".
// Round-trips through parse_gate_list.
std::string to_gate_list(const Circuit& c);
Circuit parse_gate_list(const std::string& text, int register_size);

// OpenQASM 2.0 translation (header + qelib1 include). RotZZ, RotAxisZY and
// ParityCtrlX are expanded into {cx, rz, rx, x} sequences.
std::string to_qasm(const Circuit& c);

}  // namespace z2sim
