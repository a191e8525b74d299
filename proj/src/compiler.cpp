#include "uqcpac/compiler.hpp"

#include "uqcpac/metrics.hpp"

#include <cmath>
#include <string>

namespace uqcpac {

namespace {

// Wrap an angle into [0, 2pi), compensating alpha: adding 2pi to a rotation
// angle flips the sign of Rz/Rx, i.e. shifts the global phase by pi.
double canonicalize(double angle, double& alpha) {
    const double wrapped = wrap_angle(angle);
    const double k = std::round((wrapped - angle) / kTwoPi);
    alpha += k * kPi;
    return wrapped;
}

double wrap_phase(double phi) {
    // into (-pi, pi]
    double t = std::fmod(phi, kTwoPi);
    if (t <= -kPi) t += kTwoPi;
    if (t > kPi) t -= kTwoPi;
    return t;
}

}  // namespace

Matrix2 EulerZX::reconstruct() const {
    return std::exp(cx(0, alpha)) * (rz_matrix(beta) * rx_matrix(gamma) * rz_matrix(delta));
}

EulerZX euler_zx(const Matrix2& v) {
    if (!is_unitary(v)) throw domain_error("euler_zx: input is not unitary");
    EulerZX e;
    const double mag10 = std::abs(v(1, 0));
    const double mag00 = std::abs(v(0, 0));
    e.gamma = 2.0 * std::atan2(mag10, mag00);
    const double sn = std::sin(e.gamma / 2.0);
    const double cs = std::cos(e.gamma / 2.0);
    if (sn <= 1e-9) {
        // diagonal: fold all phase into beta, delta = 0
        const double a00 = std::arg(v(0, 0));
        const double a11 = std::arg(v(1, 1));
        e.alpha = 0.5 * (a00 + a11);
        e.beta = a11 - a00;
        e.delta = 0.0;
    } else if (cs <= 1e-9) {
        // antidiagonal: M01 = -i e^{-i beta/2}, M10 = -i e^{i beta/2}
        const double a01 = std::arg(v(0, 1));
        const double a10 = std::arg(v(1, 0));
        e.alpha = 0.5 * (a01 + a10) + kPi / 2.0;
        e.beta = a10 - a01;
        e.delta = 0.0;
    } else {
        const double a00 = std::arg(v(0, 0));
        const double a10 = std::arg(v(1, 0)) + kPi / 2.0;  // arg(i V10)
        const double a11 = std::arg(v(1, 1));
        e.alpha = 0.5 * (a00 + a11);
        e.beta = a10 - a00;
        e.delta = a11 - a10;
    }
    e.beta = canonicalize(e.beta, e.alpha);
    e.gamma = canonicalize(e.gamma, e.alpha);
    e.delta = canonicalize(e.delta, e.alpha);
    e.alpha = wrap_phase(e.alpha);
    return e;
}

std::vector<NormalizedGate> normalize_circuit(const Circuit& circuit) {
    for (const Gate& g : circuit.gates) validate_gate(g, circuit.n);
    std::vector<NormalizedGate> out;
    const Matrix2 h = h_matrix();
    // 5-gate rewrite of CNOT with control c>0, target 0:
    // (H0 x Hc) CNOT_{0c} (H0 x Hc)
    auto emit_cnot_to_first = [&](int c) {
        out.push_back(SingleQubitGate{0, h});
        out.push_back(SingleQubitGate{c, h});
        out.push_back(CnotFromFirst{c});
        out.push_back(SingleQubitGate{0, h});
        out.push_back(SingleQubitGate{c, h});
    };
    for (const Gate& g : circuit.gates) {
        if (g.is_single_qubit()) {
            out.push_back(SingleQubitGate{g.q, single_qubit_matrix(g)});
            continue;
        }
        if (g.control == 0) {
            out.push_back(CnotFromFirst{g.target});
        } else if (g.target == 0) {
            emit_cnot_to_first(g.control);
        } else {
            // CNOT_{ct} = (CNOT_{c0} CNOT_{0t})^2; both share target t with
            // the original, so the flipped factor order is equally valid.
            for (int rep = 0; rep < 2; ++rep) {
                out.push_back(CnotFromFirst{g.target});
                emit_cnot_to_first(g.control);
            }
        }
    }
    return out;
}

Circuit normalized_to_circuit(int n, const std::vector<NormalizedGate>& gates) {
    Circuit c;
    c.n = n;
    for (const NormalizedGate& g : gates) {
        if (const auto* sq = std::get_if<SingleQubitGate>(&g))
            c.gates.push_back(Gate::u1(sq->qubit, sq->v));
        else
            c.gates.push_back(Gate::cnot(0, std::get<CnotFromFirst>(g).target));
    }
    return c;
}

namespace {

void place_euler(ParamVector& layer, int n, int block, int sub_block, const EulerZX& e) {
    ParamIndex idx{0, block, sub_block, 0};
    layer[idx.flat(n)] = e.delta;
    idx.angle_slot = 1;
    layer[idx.flat(n)] = e.gamma;
    idx.angle_slot = 2;
    layer[idx.flat(n)] = e.beta;
}

}  // namespace

GateLayers layers_for_gate(const NormalizedGate& g, int n) {
    if (n < 2) throw domain_error("layers_for_gate: n must be >= 2");
    const std::size_t per_layer = layer_param_count(n);
    GateLayers out;
    if (const auto* sq = std::get_if<SingleQubitGate>(&g)) {
        if (sq->qubit < 0 || sq->qubit >= n)
            throw domain_error("layers_for_gate: qubit out of range");
        const EulerZX e = euler_zx(sq->v);
        ParamVector layer(per_layer, 0.0);
        // qubit 0 is hosted in B_2's level-1 slot on qubit 1 (1-based label)
        const int block = sq->qubit == 0 ? 2 : sq->qubit + 1;
        const int sub = sq->qubit == 0 ? kSubBlockFirstOnQ1 : kSubBlockFirstOnQi;
        place_euler(layer, n, block, sub, e);
        out.layers.push_back(std::move(layer));
        out.phase = e.alpha;
        return out;
    }
    const int t = std::get<CnotFromFirst>(g).target;
    if (t < 1 || t >= n) throw domain_error("layers_for_gate: CNOT target out of range");
    const int block = t + 1;  // 1-based label of the target qubit
    const EulerZX w1 = euler_zx(rz_matrix(kPi / 2.0));
    const EulerZX w2 = euler_zx(ry_matrix(kPi / 2.0));
    const EulerZX w3 = euler_zx(Matrix2(rz_matrix(-kPi / 2.0) * ry_matrix(-kPi / 2.0)));
    const EulerZX w4 = euler_zx(rz_matrix(-kPi / 2.0));
    // first layer realizes CNOT (I x W2) CNOT (I x W1), second W4 x W3
    ParamVector layer1(per_layer, 0.0), layer2(per_layer, 0.0);
    place_euler(layer1, n, block, kSubBlockFirstOnQi, w1);
    place_euler(layer1, n, block, kSubBlockSecondOnQi, w2);
    place_euler(layer2, n, block, kSubBlockFirstOnQ1, w4);
    place_euler(layer2, n, block, kSubBlockFirstOnQi, w3);
    out.layers.push_back(std::move(layer1));
    out.layers.push_back(std::move(layer2));
    // the W product equals e^{+i pi/4} CNOT (matrix-verified), so the ledger
    // subtracts pi/4 on top of the W Euler phases
    out.phase = w1.alpha + w2.alpha + w3.alpha + w4.alpha - kPi / 4.0;
    return out;
}

CompiledAnsatz compile_to_ansatz(const Circuit& circuit, std::optional<int> depth_budget) {
    if (circuit.n < 2) throw domain_error("compile_to_ansatz: n must be >= 2");
    const auto normalized = normalize_circuit(circuit);
    const std::size_t per_layer = layer_param_count(circuit.n);

    std::vector<ParamVector> layers;
    double phase = 0.0;
    for (const NormalizedGate& g : normalized) {
        GateLayers gl = layers_for_gate(g, circuit.n);
        for (auto& l : gl.layers) layers.push_back(std::move(l));
        phase += gl.phase;
    }
    const int used = static_cast<int>(layers.size());

    int depth = depth_budget.value_or(std::max(used, 1));
    if (depth < 1) throw domain_error("compile_to_ansatz: depth budget must be >= 1");
    if (used > depth)
        throw capacity_error("compile_to_ansatz: circuit needs " + std::to_string(used) +
                                 " layers but budget is " + std::to_string(depth),
                             used);

    CompiledAnsatz out;
    out.shape = AnsatzShape{circuit.n, depth};
    out.theta.assign(per_layer * static_cast<std::size_t>(depth), 0.0);
    for (std::size_t i = 0; i < layers.size(); ++i)
        std::copy(layers[i].begin(), layers[i].end(),
                  out.theta.begin() + static_cast<std::ptrdiff_t>(i * per_layer));
    out.layers_used = used;
    out.global_phase = wrap_phase(phase);
    return out;
}

VerificationResult verify_compilation(const CompiledAnsatz& compiled,
                                      const Circuit& source, double tol) {
    if (source.n > kDenseUnitaryCap)
        throw resource_error("verify_compilation: n exceeds dense cap");
    const Matrix fu = circuit_unitary(build_ansatz(compiled.shape, compiled.theta));
    const Matrix cu = circuit_unitary(source);
    const PhaseEquivalence eq = equal_up_to_phase(fu, cu, tol);  // F^dag C = e^{i phi} I
    VerificationResult out;
    out.residual = eq.residual;
    out.phase = eq.phase;
    const double dphi = std::abs(wrap_phase(eq.phase - compiled.global_phase));
    out.ok = eq.equivalent && dphi <= 1e-8;
    return out;
}

}  // namespace uqcpac
