#include "uqcpac/core.hpp"

#include <cmath>
#include <string>

namespace uqcpac {

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = kTwoPi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed ^ (0x517cc1b727220a95ULL + index * 0x2545f4914f6cdd1dULL));
    r.next_u64();
    return r.next_u64();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(seed, a), b);
}

double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;  // fmod round-off at the top end
    return t;
}

StateVector basis_state(int n, std::uint64_t index) {
    if (n < 1) throw domain_error("basis_state: n must be >= 1");
    const std::uint64_t dim = std::uint64_t{1} << n;
    if (index >= dim)
        throw domain_error("basis_state: index " + std::to_string(index) +
                           " out of range for n=" + std::to_string(n));
    StateVector s;
    s.n = n;
    s.amps = Vector::Zero(static_cast<Eigen::Index>(dim));
    s.amps[static_cast<Eigen::Index>(index)] = cx(1.0, 0.0);
    return s;
}

StateVector sample_haar_state(int n, std::uint64_t seed) {
    if (n < 1) throw domain_error("sample_haar_state: n must be >= 1");
    Rng rng(seed);
    StateVector s;
    s.n = n;
    s.amps.resize(Eigen::Index{1} << n);
    for (Eigen::Index i = 0; i < s.amps.size(); ++i) {
        const double re = rng.gaussian();
        const double im = rng.gaussian();
        s.amps[i] = cx(re, im);
    }
    s.amps /= s.amps.norm();
    return s;
}

Matrix2 haar_unitary2(Rng& rng) {
    Matrix2 g;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) g(r, c) = cx(rng.gaussian(), rng.gaussian());
    // Gram-Schmidt; the R diagonal comes out real positive, so Q is Haar.
    Eigen::Vector2cd c0 = g.col(0);
    c0 /= c0.norm();
    Eigen::Vector2cd c1 = g.col(1) - c0 * (c0.adjoint() * g.col(1))(0);
    c1 /= c1.norm();
    Matrix2 q;
    q.col(0) = c0;
    q.col(1) = c1;
    return q;
}

Matrix2 h_matrix() {
    Matrix2 m;
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}

Matrix2 rx_matrix(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    Matrix2 m;
    m << cx(c, 0), cx(0, -s), cx(0, -s), cx(c, 0);
    return m;
}

Matrix2 ry_matrix(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    Matrix2 m;
    m << cx(c, 0), cx(-s, 0), cx(s, 0), cx(c, 0);
    return m;
}

Matrix2 rz_matrix(double theta) {
    Matrix2 m = Matrix2::Zero();
    m(0, 0) = std::exp(cx(0, -theta / 2.0));
    m(1, 1) = std::exp(cx(0, theta / 2.0));
    return m;
}

Matrix2 single_qubit_matrix(const Gate& g) {
    switch (g.kind) {
        case GateKind::H: return h_matrix();
        case GateKind::RX: return rx_matrix(g.theta);
        case GateKind::RY: return ry_matrix(g.theta);
        case GateKind::RZ: return rz_matrix(g.theta);
        case GateKind::U1: return g.matrix;
        default: throw domain_error("single_qubit_matrix: CNOT has no 2x2 matrix");
    }
}

bool is_unitary(const Matrix& u, double tol) {
    if (u.rows() != u.cols()) return false;
    const Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
}

void validate_gate(const Gate& g, int n) {
    if (g.kind == GateKind::CNOT) {
        if (g.control < 0 || g.control >= n || g.target < 0 || g.target >= n)
            throw domain_error("gate: CNOT qubit index out of range");
        if (g.control == g.target)
            throw domain_error("gate: CNOT control equals target");
        return;
    }
    if (g.q < 0 || g.q >= n) throw domain_error("gate: qubit index out of range");
    if (g.kind == GateKind::U1 && !is_unitary(g.matrix))
        throw domain_error("gate: U1 matrix is not unitary");
}

void apply_gate_inplace(Vector& amps, int n, const Gate& gate) {
    validate_gate(gate, n);
    const Eigen::Index dim = amps.size();
    if (gate.kind == GateKind::CNOT) {
        // qubit 0 is the most significant bit
        const Eigen::Index cmask = Eigen::Index{1} << (n - 1 - gate.control);
        const Eigen::Index tmask = Eigen::Index{1} << (n - 1 - gate.target);
        for (Eigen::Index i = 0; i < dim; ++i)
            if ((i & cmask) && !(i & tmask)) std::swap(amps[i], amps[i | tmask]);
        return;
    }
    const Matrix2 u = single_qubit_matrix(gate);
    const Eigen::Index mask = Eigen::Index{1} << (n - 1 - gate.q);
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (i & mask) continue;
        const cx a = amps[i];
        const cx b = amps[i | mask];
        amps[i] = u(0, 0) * a + u(0, 1) * b;
        amps[i | mask] = u(1, 0) * a + u(1, 1) * b;
    }
}

StateVector apply_gate(const StateVector& state, const Gate& gate) {
    StateVector out = state;
    apply_gate_inplace(out.amps, out.n, gate);
    return out;
}

StateVector apply_circuit(const StateVector& state, const Circuit& circuit) {
    if (circuit.n != state.n)
        throw domain_error("apply_circuit: circuit and state qubit counts differ");
    StateVector out = state;
    for (const Gate& g : circuit.gates) apply_gate_inplace(out.amps, out.n, g);
    return out;
}

Matrix circuit_unitary(const Circuit& circuit) {
    if (circuit.n < 1) throw domain_error("circuit_unitary: n must be >= 1");
    if (circuit.n > kDenseUnitaryCap)
        throw resource_error("circuit_unitary: n=" + std::to_string(circuit.n) +
                             " exceeds dense cap " + std::to_string(kDenseUnitaryCap));
    for (const Gate& g : circuit.gates) validate_gate(g, circuit.n);
    const Eigen::Index dim = Eigen::Index{1} << circuit.n;
    Matrix u(dim, dim);
    Vector col = Vector::Zero(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        col.setZero();
        col[j] = cx(1.0, 0.0);
        for (const Gate& g : circuit.gates) apply_gate_inplace(col, circuit.n, g);
        u.col(j) = col;
    }
    return u;
}

}  // namespace uqcpac
