// compiler.hpp
// Compiles circuits over single-qubit gates and CNOTs into ansatz parameters.
//
// Pipeline: rewrite the input so every gate is either a single-qubit unitary
// or a CNOT controlled on qubit 0, then emit one layer per single-qubit gate
// and two layers per CNOT, tracking the accumulated global phase so the
// compiled circuit reproduces the source exactly, not just up to phase.

#pragma once

#include "uqcpac/ansatz.hpp"
#include "uqcpac/core.hpp"

#include <optional>
#include <variant>

namespace uqcpac {

struct capacity_error : resource_error {
    int required_layers;
    capacity_error(const std::string& msg, int required)
        : resource_error(msg), required_layers(required) {}
};

// V = e^{i alpha} Rz(beta) Rx(gamma) Rz(delta); beta/gamma/delta in [0, 2pi).
struct EulerZX {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;

    Matrix2 reconstruct() const;
};

EulerZX euler_zx(const Matrix2& v);

struct SingleQubitGate {
    int qubit;  // 0-based
    Matrix2 v;
};
struct CnotFromFirst {
    int target;  // 0-based, >= 1; control is always qubit 0
};
using NormalizedGate = std::variant<SingleQubitGate, CnotFromFirst>;

// Exact rewrite (no phase slack): the ordered product of the result equals the
// source unitary. CNOTs not controlled on qubit 0 are expanded via
// H-conjugation and the four-CNOT swap of control onto qubit 0.
std::vector<NormalizedGate> normalize_circuit(const Circuit& circuit);

Circuit normalized_to_circuit(int n, const std::vector<NormalizedGate>& gates);

struct GateLayers {
    std::vector<ParamVector> layers;  // each of length 12 (n-1)
    double phase = 0.0;               // e^{i phase} * (emitted layers) = gate
};

// Single-qubit gates take one layer, CNOTs two (the W1..W4 construction,
// which carries an extra -pi/4 beyond the W Euler phases).
GateLayers layers_for_gate(const NormalizedGate& g, int n);

struct CompiledAnsatz {
    AnsatzShape shape;
    ParamVector theta;
    int layers_used = 0;
    double global_phase = 0.0;  // e^{i global_phase} F(theta) = source unitary
};

// depth_budget omitted: depth = layers used (min 1). Exceeding a given budget
// throws capacity_error carrying the required layer count.
CompiledAnsatz compile_to_ansatz(const Circuit& circuit,
                                 std::optional<int> depth_budget = std::nullopt);

struct VerificationResult {
    bool ok = false;
    double residual = 0.0;
    double phase = 0.0;  // recovered from the dense unitaries
};

VerificationResult verify_compilation(const CompiledAnsatz& compiled,
                                      const Circuit& source, double tol);

}  // namespace uqcpac
