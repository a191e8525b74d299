#include "uqcpac/learning.hpp"

#include "uqcpac/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace uqcpac {

Dataset generate_dataset(const Circuit& target, std::size_t m, std::uint64_t seed) {
    Dataset s;
    s.n = target.n;
    s.pairs.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        StateVector x = sample_haar_state(target.n, derive_seed(seed, i));
        StateVector y = apply_circuit(x, target);
        s.pairs.emplace_back(std::move(x), std::move(y));
    }
    return s;
}

StatePool make_state_pool(int n, std::size_t size, std::uint64_t seed) {
    StatePool pool;
    pool.reserve(size);
    for (std::size_t i = 0; i < size; ++i)
        pool.push_back(sample_haar_state(n, derive_seed(seed, i)));
    return pool;
}

Dataset generate_dataset_from_pool(const Circuit& target, const StatePool& pool,
                                   std::size_t m, std::uint64_t seed) {
    if (pool.empty()) throw domain_error("generate_dataset_from_pool: empty pool");
    Dataset s;
    s.n = target.n;
    s.pairs.reserve(m);
    Rng rng(seed);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& x = pool[rng.next_u64() % pool.size()];
        s.pairs.emplace_back(x, apply_circuit(x, target));
    }
    return s;
}

double empirical_risk(const AnsatzShape& shape, const ParamVector& theta,
                      const Dataset& s) {
    if (s.pairs.empty()) throw domain_error("empirical_risk: empty dataset");
    if (s.n != shape.n) throw domain_error("empirical_risk: qubit counts differ");
    const Circuit f = build_ansatz(shape, theta);
    double sum = 0.0;
    for (const auto& [x, y] : s.pairs) sum += loss(y, apply_circuit(x, f));
    return sum / static_cast<double>(s.pairs.size());
}

RiskEstimate estimate_risk(const AnsatzShape& shape, const ParamVector& theta,
                           const Circuit& target, std::size_t n_eval,
                           std::uint64_t seed) {
    if (n_eval < 2) throw domain_error("estimate_risk: n_eval must be >= 2");
    if (target.n != shape.n) throw domain_error("estimate_risk: qubit counts differ");
    const Circuit f = build_ansatz(shape, theta);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n_eval; ++i) {
        const StateVector x = sample_haar_state(target.n, derive_seed(seed, i));
        const double v = loss(apply_circuit(x, target), apply_circuit(x, f));
        sum += v;
        sumsq += v * v;
    }
    const double nd = static_cast<double>(n_eval);
    RiskEstimate out;
    out.mean = sum / nd;
    const double var = std::max(0.0, (sumsq - nd * out.mean * out.mean) / (nd - 1.0));
    out.std_error = std::sqrt(var / nd);
    out.samples_used = n_eval;
    return out;
}

double exact_risk_on_pool(const AnsatzShape& shape, const ParamVector& theta,
                          const Circuit& target, const StatePool& pool) {
    if (pool.empty()) throw domain_error("exact_risk_on_pool: empty pool");
    const Circuit f = build_ansatz(shape, theta);
    double sum = 0.0;
    for (const auto& x : pool)
        sum += loss(apply_circuit(x, target), apply_circuit(x, f));
    return sum / static_cast<double>(pool.size());
}

namespace {

constexpr double kGolden = 0.61803398874989484820;

// golden-section minimization of f over [lo, hi]
template <typename F>
double golden_section(F&& f, double lo, double hi, int iters) {
    double a = lo, b = hi;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? x1 : x2;
}

}  // namespace

TrainResult train_erm(const AnsatzShape& shape, const Dataset& s,
                      const TrainConfig& config) {
    if (s.pairs.empty()) throw domain_error("train_erm: empty dataset");
    if (config.max_sweeps < 1) throw domain_error("train_erm: max_sweeps must be >= 1");
    if (config.restarts < 0) throw domain_error("train_erm: restarts must be >= 0");
    if (config.coarse_points < 2) throw domain_error("train_erm: coarse_points must be >= 2");

    const std::size_t count = param_count(shape);
    if (config.init && config.init->size() != count)
        throw domain_error("train_erm: init parameter length mismatch");

    ParamVector best_theta;
    double best = std::numeric_limits<double>::infinity();
    TrainResult out;

    for (int start = 0; start <= config.restarts; ++start) {
        ParamVector theta(count, 0.0);
        if (start == 0) {
            if (config.init) theta = *config.init;
        } else {
            Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(start)));
            for (auto& t : theta) t = rng.angle();
        }
        double val = empirical_risk(shape, theta, s);
        if (val < best) {
            best = val;
            best_theta = theta;
        }

        for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
            bool improved = false;
            for (std::size_t k = 0; k < count; ++k) {
                auto objective = [&](double a) {
                    const double saved = theta[k];
                    theta[k] = wrap_angle(a);
                    const double v = empirical_risk(shape, theta, s);
                    theta[k] = saved;
                    return v;
                };
                // coarse scan, then refine around the best candidate
                double cand = theta[k];
                double cand_val = val;
                const double step = kTwoPi / config.coarse_points;
                for (int p = 0; p < config.coarse_points; ++p) {
                    const double a = p * step;
                    const double v = objective(a);
                    if (v < cand_val) {
                        cand_val = v;
                        cand = a;
                    }
                }
                const double refined =
                    golden_section(objective, cand - step, cand + step,
                                   config.refine_iters);
                const double refined_val = objective(refined);
                if (refined_val < cand_val) {
                    cand_val = refined_val;
                    cand = refined;
                }
                if (cand_val < val - config.improvement_tol) {
                    theta[k] = wrap_angle(cand);
                    val = cand_val;
                    improved = true;
                }
            }
            if (val < best) {
                best = val;
                best_theta = theta;
            }
            out.history.push_back(best);
            if (!improved) break;
        }
    }
    out.theta = std::move(best_theta);
    return out;
}

ParamVector round_to_grid(const ParamVector& theta, double e) {
    if (!(e > 0.0)) throw domain_error("round_to_grid: spacing must be positive");
    const double n_cells = std::floor(kTwoPi / e);
    ParamVector out;
    out.reserve(theta.size());
    for (double t : theta) {
        double k = std::ceil(t / e - 0.5);  // nearest multiple, ties down
        if (k < 0.0) k = 0.0;
        if (k > n_cells) k = n_cells;
        const double nearest = k * e;
        // near the top of the grid, wrap to 0 when 2pi is strictly nearer
        out.push_back(kTwoPi - t < std::abs(t - nearest) ? 0.0 : nearest);
    }
    return out;
}

ComplexityReport sample_complexity(double eps, double delta,
                                   const ConceptClassParams& params) {
    if (!(eps > 0.0 && eps < 1.0)) throw domain_error("sample_complexity: eps must be in (0,1)");
    if (!(delta > 0.0 && delta < 1.0))
        throw domain_error("sample_complexity: delta must be in (0,1)");
    if (params.n < 2 || params.c < 1 || params.K < 1.0 || params.M < 1)
        throw domain_error("sample_complexity: invalid concept-class parameters");

    const double n = params.n;
    const double n_pow_c = std::pow(n, params.c);
    const double l_real = 12.0 * (n - 1.0) * params.M * n_pow_c;
    // K must absorb the gate count: the proof needs l <= K n^{c+1}
    if (params.K * n_pow_c * n < l_real)
        throw domain_error("sample_complexity: K too small, need K >= 12 M (n-1)/n = " +
                           std::to_string(12.0 * params.M * (n - 1.0) / n));

    auto saturate = [](double v) {
        const double max = static_cast<double>(std::numeric_limits<std::uint64_t>::max());
        if (v >= max) return std::numeric_limits<std::uint64_t>::max();
        return static_cast<std::uint64_t>(v);
    };

    ComplexityReport r;
    r.e = eps / (6.0 * params.K * n_pow_c * n);
    const double cells = std::floor(kTwoPi / r.e);
    r.grid_cells = saturate(cells);
    r.param_count = saturate(l_real);
    r.ln_hypothesis_count = l_real * std::log(cells + 1.0);
    const double nu_real =
        (18.0 / (eps * eps)) * (r.ln_hypothesis_count + std::log(2.0 / delta));
    r.ln_nu = std::log(nu_real);
    r.nu = saturate(std::ceil(nu_real));
    return r;
}

ErmGapResult erm_gap_check(const std::vector<std::pair<double, double>>& risks) {
    if (risks.empty()) throw domain_error("erm_gap_check: empty hypothesis list");
    std::size_t erm = 0, opt = 0;
    double sup = 0.0;
    for (std::size_t i = 0; i < risks.size(); ++i) {
        if (risks[i].first < risks[erm].first) erm = i;
        if (risks[i].second < risks[opt].second) opt = i;
        sup = std::max(sup, std::abs(risks[i].first - risks[i].second));
    }
    ErmGapResult out;
    out.gap = risks[erm].second - risks[opt].second;
    out.bound = 2.0 * sup;
    out.holds = out.gap <= out.bound + 1e-12;
    return out;
}

}  // namespace uqcpac
