// metrics.hpp
// Pure-state distances and phase-invariant unitary comparison.

#pragma once

#include "uqcpac/core.hpp"

namespace uqcpac {

// |<psi1|psi2>| in [0, 1]
double fidelity(const StateVector& s1, const StateVector& s2);

// Trace-distance loss sqrt(1 - F^2); 1 - F^2 clamped to [0, 1] before the root.
double loss(const StateVector& s1, const StateVector& s2);

// Half the trace norm of the rank-1 density-matrix difference, computed by
// eigen-decomposition. Independent of loss(); kept as its oracle.
double trace_distance_oracle(const StateVector& s1, const StateVector& s2);

// Spectral norm of U1 - U2 (largest singular value).
double op_norm_distance(const Matrix& u1, const Matrix& u2);

struct PhaseEquivalence {
    bool equivalent = false;
    double phase = 0.0;    // phi with U2 ~ e^{i phi} U1
    double residual = 0.0; // ||U1^dag U2 - e^{i phi} I||_2
};

// Tests U2 = e^{i phi} U1. phi is taken from the largest-magnitude diagonal
// entry of U1^dag U2 (lowest index on ties).
PhaseEquivalence equal_up_to_phase(const Matrix& u1, const Matrix& u2, double tol);

}  // namespace uqcpac
