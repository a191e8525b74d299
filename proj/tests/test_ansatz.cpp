#include "uqcpac/ansatz.hpp"

#include "uqcpac/metrics.hpp"

#include <doctest.h>

#include <algorithm>

using namespace uqcpac;

TEST_CASE("expand_level1 structure and identities") {
    const auto gates = expand_level1(0, 0.3, 0.7, 1.1);
    CHECK(gates.size() == 7);
    CHECK(std::count_if(gates.begin(), gates.end(),
                        [](const Gate& g) { return g.kind == GateKind::H; }) == 4);
    // time order H, Rx(delta), H, Rx(gamma), H, Rx(beta), H
    CHECK(gates[1].theta == 1.1);
    CHECK(gates[3].theta == 0.7);
    CHECK(gates[5].theta == 0.3);

    SUBCASE("zero angles give the identity") {
        const Matrix u = circuit_unitary(Circuit{1, expand_level1(0, 0, 0, 0)});
        CHECK((u - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
    }
    SUBCASE("realized unitary is Rz(beta) Rx(gamma) Rz(delta)") {
        Rng rng(3);
        for (int trial = 0; trial < 25; ++trial) {
            const double b = rng.angle(), g = rng.angle(), d = rng.angle();
            const Matrix u = circuit_unitary(Circuit{1, expand_level1(0, b, g, d)});
            const Matrix expected = rz_matrix(b) * rx_matrix(g) * rz_matrix(d);
            CHECK((u - expected).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
    SUBCASE("(pi/2, pi/2, pi/2) is H up to phase -pi/2") {
        const Matrix u =
            circuit_unitary(Circuit{1, expand_level1(0, kPi / 2, kPi / 2, kPi / 2)});
        Matrix h(2, 2);
        const double r = 1.0 / std::sqrt(2.0);
        h << r, r, r, -r;
        const PhaseEquivalence eq = equal_up_to_phase(u, h, 1e-12);
        CHECK(eq.equivalent);
        CHECK(eq.phase == doctest::Approx(kPi / 2).epsilon(1e-10));  // h = e^{i pi/2} u
    }
}

TEST_CASE("expand_layer gate census and ordering") {
    const std::vector<double> p2(12, 0.0);
    const auto layer2 = expand_layer(2, p2);
    CHECK(layer2.size() == 30);

    const std::vector<double> p3(24, 0.0);
    const auto layer3 = expand_layer(3, p3);
    CHECK(layer3.size() == 60);
    // B_2 comes first: its CNOT targets qubit 1, B_3's targets qubit 2
    const auto first_cnot = std::find_if(layer3.begin(), layer3.end(), [](const Gate& g) {
        return g.kind == GateKind::CNOT;
    });
    REQUIRE(first_cnot != layer3.end());
    CHECK(first_cnot->target == 1);
    CHECK(layer3.back().target == 2);

    CHECK_THROWS_AS(expand_layer(3, p2), domain_error);
}

TEST_CASE("zero-parameter layers are the identity") {
    for (int n = 2; n <= 5; ++n) {
        const std::vector<double> p(layer_param_count(n), 0.0);
        const Matrix u = circuit_unitary(Circuit{n, expand_layer(n, p)});
        const Eigen::Index dim = Eigen::Index{1} << n;
        CHECK((u - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("build_ansatz shapes and zero identity") {
    CHECK(param_count({2, 1}) == 12);
    CHECK(param_count({3, 2}) == 48);
    CHECK_THROWS_AS(build_ansatz({2, 1}, ParamVector(13, 0.0)), domain_error);

    for (int n = 2; n <= 5; ++n) {
        for (int depth = 1; depth <= 4; depth += 3) {
            const AnsatzShape shape{n, depth};
            const Matrix u = circuit_unitary(build_ansatz(shape, ParamVector(param_count(shape), 0.0)));
            const Eigen::Index dim = Eigen::Index{1} << n;
            const PhaseEquivalence eq =
                equal_up_to_phase(u, Matrix::Identity(dim, dim), 1e-9);
            CHECK(eq.equivalent);
        }
    }
}

TEST_CASE("gate census matches 12(n-1)D rotations and 2(n-1)D CNOTs") {
    Rng rng(17);
    for (const auto& [n, depth] : {std::pair{2, 1}, {3, 2}, {4, 3}}) {
        const AnsatzShape shape{n, depth};
        ParamVector theta(param_count(shape));
        for (auto& t : theta) t = rng.angle();
        const Circuit c = build_ansatz(shape, theta);
        const auto rx =
            std::count_if(c.gates.begin(), c.gates.end(),
                          [](const Gate& g) { return g.kind == GateKind::RX; });
        const auto cnots =
            std::count_if(c.gates.begin(), c.gates.end(),
                          [](const Gate& g) { return g.kind == GateKind::CNOT; });
        CHECK(rx == 12 * (n - 1) * depth);
        CHECK(cnots == 2 * (n - 1) * depth);
    }
}

TEST_CASE("parameter layout maps flat indices consistently") {
    const int n = 3;
    // setting exactly one angle through ParamIndex moves exactly one Rx
    ParamIndex idx{1, 3, 2, 1};  // layer 1, block B_3, third sub-block, gamma
    const AnsatzShape shape{n, 2};
    ParamVector theta(param_count(shape), 0.0);
    theta[idx.flat(n)] = 0.9;
    const Circuit c = build_ansatz(shape, theta);
    int hot = 0;
    for (const Gate& g : c.gates)
        if (g.kind == GateKind::RX && g.theta != 0.0) {
            ++hot;
            CHECK(g.theta == 0.9);
            CHECK(g.q == 0);  // sub-block 2 sits on qubit 1 (1-based label)
        }
    CHECK(hot == 1);
    CHECK_THROWS_AS((ParamIndex{0, 4, 0, 0}.flat(n)), domain_error);
}

TEST_CASE("parameter Lipschitz bound") {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 2);
        const int depth = 1 + static_cast<int>(rng.next_u64() % 2);
        const AnsatzShape shape{n, depth};
        const std::size_t l = param_count(shape);
        ParamVector t1(l), t2(l);
        double s = 0.0;
        for (std::size_t i = 0; i < l; ++i) {
            t1[i] = rng.angle();
            const double d = (rng.uniform() - 0.5) * 0.2;  // |d| <= 0.1
            t2[i] = t1[i] + d;
            s = std::max(s, std::abs(d));
        }
        const Matrix f1 = circuit_unitary(build_ansatz(shape, t1));
        const Matrix f2 = circuit_unitary(build_ansatz(shape, t2));
        CHECK(op_norm_distance(f1, f2) <= static_cast<double>(l) * s + 1e-9);

        // loss deviation bound: |L(y,F1 x) - L(y,F2 x)| <= E(F1,F2)
        const double e = op_norm_distance(f1, f2);
        for (int k = 0; k < 5; ++k) {
            const StateVector x = sample_haar_state(n, derive_seed(91, trial, k));
            const StateVector y = sample_haar_state(n, derive_seed(92, trial, k));
            StateVector f1x{n, f1 * x.amps}, f2x{n, f2 * x.amps};
            CHECK(std::abs(loss(y, f1x) - loss(y, f2x)) <= e + 1e-10);
        }
    }
}
