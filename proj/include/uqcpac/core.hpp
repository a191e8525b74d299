// core.hpp
// Dense statevector simulation: states, gates, circuits, and full unitaries.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace uqcpac {

using cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Largest n for which dense 2^n x 2^n unitaries may be materialized.
inline constexpr int kDenseUnitaryCap = 10;

// Dimension mismatch, bad indices, non-unitary inputs.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requests exceeding the dense cap or a layer budget.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Deterministic RNG. Box-Muller over mt19937_64 bits so streams are
// reproducible independent of the standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [0, 2pi)
    double angle() { return uniform() * kTwoPi; }

    double gaussian();

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Stream derivation for parallel-safe reproducibility: mixes (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

// ---------------------------------------------------------------------------
// States

struct StateVector {
    int n = 0;
    Vector amps;  // 2^n amplitudes; qubit 0 is the most significant index bit

    Eigen::Index dim() const { return amps.size(); }
    double norm() const { return amps.norm(); }
};

StateVector basis_state(int n, std::uint64_t index);
StateVector sample_haar_state(int n, std::uint64_t seed);

// Haar-random 2x2 unitary (QR of a complex Ginibre matrix, phases fixed).
Matrix2 haar_unitary2(Rng& rng);

// ---------------------------------------------------------------------------
// Gates

enum class GateKind { H, RX, RY, RZ, CNOT, U1 };

struct Gate {
    GateKind kind = GateKind::H;
    int q = -1;                    // single-qubit gates
    int control = -1, target = -1; // CNOT
    double theta = 0.0;            // rotations
    Matrix2 matrix = Matrix2::Zero(); // U1

    static Gate h(int q) { return {GateKind::H, q}; }
    static Gate rx(int q, double theta) { return {GateKind::RX, q, -1, -1, theta}; }
    static Gate ry(int q, double theta) { return {GateKind::RY, q, -1, -1, theta}; }
    static Gate rz(int q, double theta) { return {GateKind::RZ, q, -1, -1, theta}; }
    static Gate cnot(int control, int target) {
        Gate g;
        g.kind = GateKind::CNOT;
        g.control = control;
        g.target = target;
        return g;
    }
    static Gate u1(int q, const Matrix2& m) {
        Gate g;
        g.kind = GateKind::U1;
        g.q = q;
        g.matrix = m;
        return g;
    }

    bool is_single_qubit() const { return kind != GateKind::CNOT; }
};

struct Circuit {
    int n = 0;
    std::vector<Gate> gates;  // applied left-to-right
};

// 2x2 matrices of the named gates
Matrix2 h_matrix();
Matrix2 rx_matrix(double theta);
Matrix2 ry_matrix(double theta);
Matrix2 rz_matrix(double theta);
Matrix2 single_qubit_matrix(const Gate& g);

bool is_unitary(const Matrix& u, double tol = 1e-10);

// Throws domain_error when the gate's indices or matrix are invalid for n qubits.
void validate_gate(const Gate& g, int n);

StateVector apply_gate(const StateVector& state, const Gate& gate);
StateVector apply_circuit(const StateVector& state, const Circuit& circuit);

// In-place core used by the value-returning wrappers.
void apply_gate_inplace(Vector& amps, int n, const Gate& gate);

// Dense ordered gate product; requires circuit.n <= kDenseUnitaryCap.
Matrix circuit_unitary(const Circuit& circuit);

// wrap into [0, 2pi)
double wrap_angle(double theta);

}  // namespace uqcpac
