// ansatz.hpp
// The fixed universal variational circuit F = (B_n ... B_2)^depth.
//
// A level-1 block on one qubit is the 7-gate gadget
//   H, Rx(delta), H, Rx(gamma), H, Rx(beta), H   (time order)
// whose unitary is Rz(beta) Rx(gamma) Rz(delta). A level-2 block B_i couples
// qubit 1 and qubit i (1-based labels) as
//   L(q1), L(qi), CNOT(1->i), L(q1), L(qi), CNOT(1->i).

#pragma once

#include "uqcpac/core.hpp"

#include <span>

namespace uqcpac {

struct AnsatzShape {
    int n = 2;     // qubit count, >= 2
    int depth = 1; // layer count, >= 1
};

using ParamVector = std::vector<double>;  // angles in [0, 2pi)

// 12 (n-1) depth
std::size_t param_count(const AnsatzShape& shape);
std::size_t layer_param_count(int n);

// Position of one angle within the flat parameter vector.
struct ParamIndex {
    int layer = 0;      // 0 .. depth-1
    int block = 2;      // target-qubit label i in {2..n}, 1-based
    int sub_block = 0;  // time order of the four level-1 blocks within B_i
    int angle_slot = 0; // 0: delta, 1: gamma, 2: beta

    std::size_t flat(int n) const;
};

// Sub-block positions within B_i, in time order.
inline constexpr int kSubBlockFirstOnQ1 = 0;
inline constexpr int kSubBlockFirstOnQi = 1;
inline constexpr int kSubBlockSecondOnQ1 = 2;
inline constexpr int kSubBlockSecondOnQi = 3;

// 7 gates realizing Rz(beta) Rx(gamma) Rz(delta) on `qubit` (0-based).
std::vector<Gate> expand_level1(int qubit, double beta, double gamma, double delta);

// One layer B_2 ... B_n in time order; params holds 12 (n-1) angles.
std::vector<Gate> expand_layer(int n, std::span<const double> layer_params);

Circuit build_ansatz(const AnsatzShape& shape, const ParamVector& theta);

}  // namespace uqcpac
