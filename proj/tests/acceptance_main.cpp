// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include "uqcpac/compiler.hpp"
#include "uqcpac/core.hpp"
#include "uqcpac/experiments.hpp"
#include "uqcpac/learning.hpp"
#include "uqcpac/metrics.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

using namespace uqcpac;

namespace {

struct Check {
    std::string name;
    std::function<std::string()> run;  // empty string = pass, else failure detail
};

int workers() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 4;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ParamVector random_theta(const AnsatzShape& shape, Rng& rng) {
    ParamVector theta(param_count(shape));
    for (auto& t : theta) t = rng.angle();
    return theta;
}

std::string fail(const char* fmt, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    return buf;
}

// 1. compile + verify 200 random circuits (<= 12 gates) per n in {2..5};
//    residual <= 1e-9, layers_used <= 2 * normalized length, < 2 minutes total
std::string check_compiler_universality() {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg;
    cfg.kind = "compile-sweep";
    cfg.ns = {2, 3, 4, 5};
    cfg.trials = 200;
    cfg.max_gates = 12;
    cfg.tolerance = 1e-9;
    cfg.seed = 20260826;
    cfg.workers = workers();
    const CompileSweepRecord record = experiment_compile_sweep(cfg);
    for (const auto& row : record.rows) {
        if (row.residual > 1e-9)
            return fail("residual %.3g at n=%g", row.residual, row.n);
        if (row.layers_used > 2 * row.normalized_length)
            return fail("layer bound violated: T=%g > 2l=%g",
                        row.layers_used, 2.0 * row.normalized_length);
    }
    if (!record.all_ok) return "sweep reported a failed row";
    const double elapsed = seconds_since(t0);
    if (elapsed >= 120.0) return fail("took %.1f s (budget 120 s)", elapsed);
    return {};
}

// 2. (W4 (x) W3) CNOT (I (x) W2) CNOT (I (x) W1) = e^{i pi/4} CNOT, tol 1e-12
std::string check_w_sequence_identity() {
    Circuit w;
    w.n = 2;
    w.gates = {Gate::rz(1, kPi / 2),                       // W1 on target
               Gate::cnot(0, 1),
               Gate::ry(1, kPi / 2),                       // W2 on target
               Gate::cnot(0, 1),
               Gate::ry(1, -kPi / 2), Gate::rz(1, -kPi / 2),  // W3 = Rz Ry
               Gate::rz(0, -kPi / 2)};                     // W4 on control
    const Matrix product = circuit_unitary(w);
    const Matrix cnot = circuit_unitary(Circuit{2, {Gate::cnot(0, 1)}});
    const PhaseEquivalence eq = equal_up_to_phase(cnot, product, 1e-12);
    if (!eq.equivalent) return fail("residual %.3g > 1e-12", eq.residual);
    if (std::abs(eq.phase - kPi / 4) > 1e-12)
        return fail("recovered phase %.17g != pi/4", eq.phase);
    const double direct = (product - std::exp(cx(0, kPi / 4)) * cnot)
                              .cwiseAbs()
                              .maxCoeff();
    if (direct > 1e-12) return fail("direct residual %.3g", direct);
    return {};
}

// 3. 10^4 Euler ZX round-trips within 1e-12, plus degenerate inputs
std::string check_euler_roundtrip() {
    Rng rng(3);
    auto roundtrip = [](const Matrix2& v) {
        return (euler_zx(v).reconstruct() - v).cwiseAbs().maxCoeff();
    };
    for (int i = 0; i < 10000; ++i) {
        const double r = roundtrip(haar_unitary2(rng));
        if (r > 1e-12) return fail("Haar round-trip residual %.3g", r);
    }
    for (int i = 0; i < 200; ++i) {
        const cx phase = std::exp(cx(0, rng.angle()));
        const Matrix2 diag = phase * rz_matrix(rng.angle());
        Matrix2 x;
        x << 0, 1, 1, 0;
        const Matrix2 anti = phase * (x * rz_matrix(rng.angle())).eval();
        if (const double r = roundtrip(diag); r > 1e-12)
            return fail("diagonal round-trip residual %.3g", r);
        if (const double r = roundtrip(anti); r > 1e-12)
            return fail("antidiagonal round-trip residual %.3g", r);
    }
    return {};
}

// 4. 10^4 draws: ||Rx(t) - Rx(t+eps)|| <= eps, and equals 2 sin(eps/4) to 1e-12
std::string check_rx_lipschitz() {
    Rng rng(4);
    for (int i = 0; i < 10000; ++i) {
        const double theta = rng.angle();
        const double eps = rng.uniform();
        if (eps == 0.0) continue;
        const double d = op_norm_distance(rx_matrix(theta), rx_matrix(theta + eps));
        if (d > eps) return fail("distance %.17g > eps %.17g", d, eps);
        if (std::abs(d - 2.0 * std::sin(eps / 4.0)) > 1e-12)
            return fail("closed form off by %.3g", std::abs(d - 2 * std::sin(eps / 4)));
    }
    return {};
}

// 5. 500 sequence pairs (length <= 20, n <= 4): product distance <= sum of
//    per-gate distances, within 1e-10
std::string check_subadditivity() {
    Rng rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 3);
        const int len = 1 + static_cast<int>(rng.next_u64() % 20);
        Circuit cu, cv;
        cu.n = cv.n = n;
        double sum = 0.0;
        for (int j = 0; j < len; ++j) {
            const int q = static_cast<int>(rng.next_u64() % n);
            const Gate gu = Gate::u1(q, haar_unitary2(rng));
            const Gate gv = Gate::u1(q, haar_unitary2(rng));
            cu.gates.push_back(gu);
            cv.gates.push_back(gv);
            sum += op_norm_distance(circuit_unitary(Circuit{n, {gu}}),
                                    circuit_unitary(Circuit{n, {gv}}));
        }
        const double d = op_norm_distance(circuit_unitary(cu), circuit_unitary(cv));
        if (d > sum + 1e-10)
            return fail("product distance %.17g > sum %.17g", d, sum);
    }
    return {};
}

// 6. loss agrees with the trace-distance oracle (1e-10, 10^3 pairs); triangle
//    inequality and 2-norm bound (1e-12, 10^3 each)
std::string check_loss_identities() {
    Rng rng(6);
    for (int i = 0; i < 1000; ++i) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 4);
        const StateVector a = sample_haar_state(n, rng.next_u64());
        const StateVector b = sample_haar_state(n, rng.next_u64());
        const StateVector c = sample_haar_state(n, rng.next_u64());
        const double gap = std::abs(loss(a, b) - trace_distance_oracle(a, b));
        if (gap > 1e-10) return fail("oracle gap %.3g", gap);
        if (loss(a, c) > loss(a, b) + loss(b, c) + 1e-12)
            return fail("triangle violated by %.3g",
                        loss(a, c) - loss(a, b) - loss(b, c));
        if (loss(a, b) > (a.amps - b.amps).norm() + 1e-12)
            return fail("2-norm bound violated by %.3g",
                        loss(a, b) - (a.amps - b.amps).norm());
    }
    return {};
}

// 7. 50 random targets (n <= 4): compiled parameters give empirical risk
//    <= 1e-9 on fresh 64-sample datasets
std::string check_zero_risk_realizability() {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 3);
        const Circuit target = random_gate_circuit(n, 12, rng.next_u64());
        const CompiledAnsatz compiled = compile_to_ansatz(target);
        const Dataset data = generate_dataset(target, 64, rng.next_u64());
        const double rhat = empirical_risk(compiled.shape, compiled.theta, data);
        if (rhat > 1e-9) return fail("empirical risk %.3g", rhat);
    }
    return {};
}

// 8. n=2 depth 1, e from (eps=0.3, K=12, c=1): rounding to the grid moves the
//    empirical risk by at most l*e/2 (+1e-9), over 100 datasets
std::string check_discretization_chain() {
    const AnsatzShape shape{2, 1};
    const double e = sample_complexity(0.3, 0.1, ConceptClassParams{2, 1, 12.0, 2}).e;
    const double l = static_cast<double>(param_count(shape));
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const Circuit target = random_concept_circuit(2, 1, rng.next_u64());
        const Dataset data = generate_dataset(target, 16, rng.next_u64());
        const ParamVector theta = random_theta(shape, rng);
        const ParamVector rounded = round_to_grid(theta, e);
        const double gap = std::abs(empirical_risk(shape, theta, data) -
                                    empirical_risk(shape, rounded, data));
        if (gap > l * e / 2.0 + 1e-9)
            return fail("risk moved %.3g > bound %.3g", gap, l * e / 2.0);
    }
    return {};
}

// 9. finite-support P (50 states), 8x8 grid over two parameters: the ERM-gap
//    inequality holds on 100 dataset redraws
std::string check_erm_gap() {
    const int n = 2;
    const AnsatzShape shape{n, 1};
    const StatePool pool = make_state_pool(n, 50, 99);
    const Circuit target = random_concept_circuit(n, 1, 909);

    std::vector<ParamVector> grid;
    std::vector<double> exact;
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            ParamVector theta(param_count(shape), 0.0);
            theta[0] = kTwoPi * a / 8.0;
            theta[1] = kTwoPi * b / 8.0;
            exact.push_back(exact_risk_on_pool(shape, theta, target, pool));
            grid.push_back(std::move(theta));
        }
    }
    for (int redraw = 0; redraw < 100; ++redraw) {
        const Dataset data = generate_dataset_from_pool(
            target, pool, 20, derive_seed(909, static_cast<std::uint64_t>(redraw)));
        std::vector<std::pair<double, double>> risks;
        for (std::size_t h = 0; h < grid.size(); ++h)
            risks.emplace_back(empirical_risk(shape, grid[h], data), exact[h]);
        const ErmGapResult result = erm_gap_check(risks);
        if (!result.holds)
            return fail("gap %.17g > bound %.17g", result.gap, result.bound);
    }
    return {};
}

// 10. n=2, c=1, 50 trials, m in {8,32,128,512}: mean |Rhat - R| over random
//     hypotheses is non-increasing in m within 3 sigma; < 5 minutes
std::string check_generalization_trend() {
    const auto t0 = std::chrono::steady_clock::now();
    const AnsatzShape shape{2, 1};
    const std::vector<std::size_t> ms = {8, 32, 128, 512};
    const int trials = 50;

    std::vector<std::vector<double>> gaps(ms.size(), std::vector<double>(trials));
    parallel_for(static_cast<std::size_t>(trials), workers(), [&](std::size_t t) {
        const std::uint64_t tseed = derive_seed(10, t);
        Rng rng(derive_seed(tseed, 0));
        const Circuit target = random_concept_circuit(2, 1, derive_seed(tseed, 1));
        const ParamVector theta = random_theta(shape, rng);
        const double risk =
            estimate_risk(shape, theta, target, 4096, derive_seed(tseed, 2)).mean;
        for (std::size_t k = 0; k < ms.size(); ++k) {
            const Dataset data =
                generate_dataset(target, ms[k], derive_seed(tseed, 10 + k));
            gaps[k][t] = std::abs(empirical_risk(shape, theta, data) - risk);
        }
    });

    std::vector<double> mean(ms.size()), se(ms.size());
    for (std::size_t k = 0; k < ms.size(); ++k) {
        double s = 0.0;
        for (double g : gaps[k]) s += g;
        mean[k] = s / trials;
        double v = 0.0;
        for (double g : gaps[k]) v += (g - mean[k]) * (g - mean[k]);
        se[k] = std::sqrt(v / (trials - 1) / trials);
    }
    for (std::size_t k = 0; k + 1 < ms.size(); ++k) {
        const double slack = 3.0 * std::sqrt(se[k] * se[k] + se[k + 1] * se[k + 1]);
        if (mean[k + 1] > mean[k] + slack)
            return fail("mean gap rose: %.4g -> %.4g", mean[k], mean[k + 1]);
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= 300.0) return fail("took %.1f s (budget 300 s)", elapsed);
    return {};
}

// 11. calculator fields match independently evaluated formulas for three
//     settings (including e = 0.1/288), and nu is monotone in eps and delta
std::string check_calculator() {
    struct Setting {
        double eps, delta;
        ConceptClassParams p;
    };
    const std::vector<Setting> settings = {
        {0.1, 0.1, {2, 1, 12.0, 2}},
        {0.25, 0.02, {3, 2, 24.0, 2}},
        {0.05, 0.01, {2, 2, 12.0, 1}},
    };
    for (const Setting& s : settings) {
        const ComplexityReport r = sample_complexity(s.eps, s.delta, s.p);
        const double denom =
            6.0 * s.p.K * std::pow(static_cast<double>(s.p.n), s.p.c + 1);
        const double e = s.eps / denom;
        const auto cells = static_cast<std::uint64_t>(std::floor(kTwoPi / e));
        const std::uint64_t l = 12ULL * static_cast<std::uint64_t>(s.p.n - 1) *
                                static_cast<std::uint64_t>(s.p.M) *
                                static_cast<std::uint64_t>(
                                    std::llround(std::pow(s.p.n, s.p.c)));
        const double ln_hyp =
            static_cast<double>(l) * std::log(static_cast<double>(cells) + 1.0);
        const double nu_real =
            (18.0 / (s.eps * s.eps)) * (ln_hyp + std::log(2.0 / s.delta));
        const auto nu = static_cast<std::uint64_t>(std::ceil(nu_real));
        if (r.e != e) return fail("e %.17g != %.17g", r.e, e);
        if (r.grid_cells != cells)
            return fail("grid_cells %.17g != %.17g", static_cast<double>(r.grid_cells),
                        static_cast<double>(cells));
        if (r.param_count != l)
            return fail("param_count %.17g != %.17g",
                        static_cast<double>(r.param_count), static_cast<double>(l));
        if (std::abs(r.ln_hypothesis_count - ln_hyp) > 1e-9)
            return fail("ln|F'| %.17g != %.17g", r.ln_hypothesis_count, ln_hyp);
        if (r.nu != nu)
            return fail("nu %.17g != %.17g", static_cast<double>(r.nu),
                        static_cast<double>(nu));
    }
    // explicit hand-checked values for (eps=0.1, K=12, n=2, c=1)
    const ComplexityReport head = sample_complexity(0.1, 0.1, {2, 1, 12.0, 2});
    if (head.e != 0.1 / 288.0) return fail("headline e %.17g != 0.1/288", head.e);
    if (head.grid_cells != 18095)
        return fail("headline N %.17g != 18095", static_cast<double>(head.grid_cells));
    if (head.param_count != 48)
        return fail("headline l %.17g != 48", static_cast<double>(head.param_count));

    const ConceptClassParams p{2, 1, 12.0, 2};
    if (sample_complexity(0.05, 0.1, p).nu < sample_complexity(0.1, 0.1, p).nu)
        return fail("nu not monotone in eps", 0);
    if (sample_complexity(0.1, 0.01, p).nu < sample_complexity(0.1, 0.1, p).nu)
        return fail("nu not monotone in delta", 0);
    return {};
}

}  // namespace

int main() {
    const std::vector<Check> checks = {
        {"compiler universality (800 random circuits, residual <= 1e-9, T <= 2l)",
         check_compiler_universality},
        {"W-sequence identity (= e^{i pi/4} CNOT, tol 1e-12)", check_w_sequence_identity},
        {"Euler ZX round-trip (10^4 Haar + degenerate, tol 1e-12)", check_euler_roundtrip},
        {"Rx Lipschitz bound (<= eps, = 2 sin(eps/4), tol 1e-12)", check_rx_lipschitz},
        {"distance subadditivity (500 sequence pairs, tol 1e-10)", check_subadditivity},
        {"loss identities (oracle 1e-10; triangle/2-norm 1e-12)", check_loss_identities},
        {"zero-risk realizability (50 targets, risk <= 1e-9)",
         check_zero_risk_realizability},
        {"discretization chain (|dRhat| <= l*e/2, 100 datasets)",
         check_discretization_chain},
        {"ERM-gap inequality (finite support, 100 redraws)", check_erm_gap},
        {"generalization trend (mean gap non-increasing in m)",
         check_generalization_trend},
        {"sample-complexity calculator (3 settings + monotonicity)", check_calculator},
    };

    int failures = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        std::string detail;
        try {
            detail = checks[i].run();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (detail.empty()) {
            std::printf("[PASS] %2zu. %s\n", i + 1, checks[i].name.c_str());
        } else {
            std::printf("[FAIL] %2zu. %s — %s\n", i + 1, checks[i].name.c_str(),
                        detail.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    if (failures) std::printf("%d of %zu checks failed\n", failures, checks.size());
    return failures ? 1 : 0;
}
