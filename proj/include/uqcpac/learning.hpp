// learning.hpp
// PAC-learning testbench: datasets, empirical/true risk, ERM training,
// parameter-grid discretization, and the sample-complexity calculator.

#pragma once

#include "uqcpac/ansatz.hpp"
#include "uqcpac/core.hpp"

#include <cstdint>
#include <optional>
#include <utility>

namespace uqcpac {

struct Dataset {
    int n = 0;
    std::vector<std::pair<StateVector, StateVector>> pairs;  // (x, y)

    std::size_t size() const { return pairs.size(); }
};

// x_i Haar-sampled with per-index derived seeds, y_i = target(x_i).
Dataset generate_dataset(const Circuit& target, std::size_t m, std::uint64_t seed);

// Finite-support alternative: uniform over a fixed pool, so the true risk is
// exactly computable.
using StatePool = std::vector<StateVector>;
StatePool make_state_pool(int n, std::size_t size, std::uint64_t seed);
Dataset generate_dataset_from_pool(const Circuit& target, const StatePool& pool,
                                   std::size_t m, std::uint64_t seed);

// (1/m) sum loss(y_i, F(theta) x_i)
double empirical_risk(const AnsatzShape& shape, const ParamVector& theta,
                      const Dataset& s);

struct RiskEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples_used = 0;
};

// Monte-Carlo risk over fresh Haar inputs.
RiskEstimate estimate_risk(const AnsatzShape& shape, const ParamVector& theta,
                           const Circuit& target, std::size_t n_eval,
                           std::uint64_t seed);

// Exact risk under uniform-over-pool P.
double exact_risk_on_pool(const AnsatzShape& shape, const ParamVector& theta,
                          const Circuit& target, const StatePool& pool);

struct TrainConfig {
    int max_sweeps = 25;         // coordinate-descent sweeps per start
    int restarts = 0;            // extra random starts beyond the initial one
    int coarse_points = 8;       // candidate angles per coordinate
    int refine_iters = 40;       // golden-section refinement steps
    double improvement_tol = 1e-10;
    std::uint64_t seed = 0;
    std::optional<ParamVector> init;  // default: all-zero parameters
};

struct TrainResult {
    ParamVector theta;
    std::vector<double> history;  // best empirical risk after each sweep
};

// Derivative-free ERM: coordinate descent with golden-section line search on
// [0, 2pi), deterministic for a fixed config.
TrainResult train_erm(const AnsatzShape& shape, const Dataset& s,
                      const TrainConfig& config = {});

// Nearest multiple of e in {0, e, ..., N e}, N = floor(2pi/e); ties round
// down; values nearer to 2pi than to N e wrap to 0.
ParamVector round_to_grid(const ParamVector& theta, double e);

struct ConceptClassParams {
    int n = 2;
    int c = 1;
    double K = 12.0;
    int M = 2;
};

struct ComplexityReport {
    double e = 0.0;                  // grid spacing, eps / (6 K n^{c+1})
    std::uint64_t grid_cells = 0;    // N = floor(2pi / e)
    std::uint64_t param_count = 0;   // l = 12 (n-1) M n^c
    double ln_hypothesis_count = 0;  // ln|F'| = l ln(N+1)
    double ln_nu = 0.0;
    std::uint64_t nu = 0;  // ceil((18/eps^2)(ln|F'| + ln(2/delta))), saturating
};

// Validates eps, delta in (0,1) and the constant constraint K >= l / n^{c+1}.
ComplexityReport sample_complexity(double eps, double delta,
                                   const ConceptClassParams& params);

struct ErmGapResult {
    double gap = 0.0;    // R(erm pick) - R(risk minimizer)
    double bound = 0.0;  // 2 max |Rhat - R|
    bool holds = false;
};

// Uniform-convergence inequality over a finite hypothesis list of
// (empirical risk, risk) pairs.
ErmGapResult erm_gap_check(const std::vector<std::pair<double, double>>& risks);

}  // namespace uqcpac
