#include "uqcpac/ansatz.hpp"

#include <string>

namespace uqcpac {

std::size_t layer_param_count(int n) {
    if (n < 2) throw domain_error("ansatz: n must be >= 2");
    return 12u * static_cast<std::size_t>(n - 1);
}

std::size_t param_count(const AnsatzShape& shape) {
    if (shape.depth < 1) throw domain_error("ansatz: depth must be >= 1");
    return layer_param_count(shape.n) * static_cast<std::size_t>(shape.depth);
}

std::size_t ParamIndex::flat(int n) const {
    if (block < 2 || block > n) throw domain_error("ParamIndex: block out of range");
    if (sub_block < 0 || sub_block > 3) throw domain_error("ParamIndex: sub_block out of range");
    if (angle_slot < 0 || angle_slot > 2) throw domain_error("ParamIndex: angle_slot out of range");
    const std::size_t blocks_per_layer = static_cast<std::size_t>(n - 1);
    return ((static_cast<std::size_t>(layer) * blocks_per_layer +
             static_cast<std::size_t>(block - 2)) * 4 +
            static_cast<std::size_t>(sub_block)) * 3 +
           static_cast<std::size_t>(angle_slot);
}

std::vector<Gate> expand_level1(int qubit, double beta, double gamma, double delta) {
    return {Gate::h(qubit),  Gate::rx(qubit, delta), Gate::h(qubit),
            Gate::rx(qubit, gamma), Gate::h(qubit),  Gate::rx(qubit, beta),
            Gate::h(qubit)};
}

namespace {

// angles stored (delta, gamma, beta), matching application order inside L
void emit_level1(std::vector<Gate>& out, int qubit, std::span<const double> dgb) {
    auto g = expand_level1(qubit, dgb[2], dgb[1], dgb[0]);
    out.insert(out.end(), g.begin(), g.end());
}

}  // namespace

std::vector<Gate> expand_layer(int n, std::span<const double> layer_params) {
    if (layer_params.size() != layer_param_count(n))
        throw domain_error("expand_layer: expected " +
                           std::to_string(layer_param_count(n)) + " parameters, got " +
                           std::to_string(layer_params.size()));
    std::vector<Gate> out;
    out.reserve(static_cast<std::size_t>(n - 1) * 30);
    for (int block = 2; block <= n; ++block) {
        const std::size_t base = static_cast<std::size_t>(block - 2) * 12;
        const int qi = block - 1;  // 0-based index of 1-based label `block`
        emit_level1(out, 0, layer_params.subspan(base + 0, 3));
        emit_level1(out, qi, layer_params.subspan(base + 3, 3));
        out.push_back(Gate::cnot(0, qi));
        emit_level1(out, 0, layer_params.subspan(base + 6, 3));
        emit_level1(out, qi, layer_params.subspan(base + 9, 3));
        out.push_back(Gate::cnot(0, qi));
    }
    return out;
}

Circuit build_ansatz(const AnsatzShape& shape, const ParamVector& theta) {
    if (theta.size() != param_count(shape))
        throw domain_error("build_ansatz: expected " +
                           std::to_string(param_count(shape)) + " parameters, got " +
                           std::to_string(theta.size()));
    Circuit c;
    c.n = shape.n;
    const std::size_t per_layer = layer_param_count(shape.n);
    for (int layer = 0; layer < shape.depth; ++layer) {
        auto gates = expand_layer(
            shape.n, std::span<const double>(theta).subspan(
                         static_cast<std::size_t>(layer) * per_layer, per_layer));
        c.gates.insert(c.gates.end(), gates.begin(), gates.end());
    }
    return c;
}

}  // namespace uqcpac
