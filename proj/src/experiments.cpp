#include "uqcpac/experiments.hpp"

#include "uqcpac/io.hpp"
#include "uqcpac/metrics.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

namespace uqcpac {

using nlohmann::json;

Circuit random_gate_circuit(int n, int max_gates, std::uint64_t seed) {
    if (n < 2 || max_gates < 1)
        throw domain_error("random_gate_circuit: need n >= 2, max_gates >= 1");
    Rng rng(seed);
    const std::uint64_t count =
        1 + rng.next_u64() % static_cast<std::uint64_t>(max_gates);
    Circuit circuit;
    circuit.n = n;
    for (std::uint64_t g = 0; g < count; ++g) {
        switch (rng.next_u64() % 4) {
            case 0:
                circuit.gates.push_back(Gate::h(static_cast<int>(rng.next_u64() % n)));
                break;
            case 1:
                circuit.gates.push_back(
                    Gate::rx(static_cast<int>(rng.next_u64() % n), rng.angle()));
                break;
            case 2:
                circuit.gates.push_back(
                    Gate::u1(static_cast<int>(rng.next_u64() % n), haar_unitary2(rng)));
                break;
            default: {
                const int control = static_cast<int>(rng.next_u64() % n);
                int target = static_cast<int>(rng.next_u64() % (n - 1));
                if (target >= control) ++target;
                circuit.gates.push_back(Gate::cnot(control, target));
            }
        }
    }
    return circuit;
}

Circuit random_concept_circuit(int n, int c, std::uint64_t seed) {
    if (n < 2 || c < 1) throw domain_error("random_concept_circuit: need n >= 2, c >= 1");
    std::uint64_t budget = 1;
    for (int i = 0; i < c; ++i) budget *= static_cast<std::uint64_t>(n);
    return random_gate_circuit(n, static_cast<int>(budget), seed);
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("experiment config: ") + e.what());
    }
    ExperimentConfig cfg;
    auto get = [&](const char* key, auto& field) {
        if (doc.contains(key)) field = doc[key].get<std::decay_t<decltype(field)>>();
    };
    get("experiment", cfg.kind);
    get("ns", cfg.ns);
    get("max_gates", cfg.max_gates);
    get("tolerance", cfg.tolerance);
    get("n", cfg.n);
    get("c", cfg.c);
    get("m_schedule", cfg.m_schedule);
    get("num_random_hypotheses", cfg.num_random_hypotheses);
    get("n_eval", cfg.n_eval);
    get("distribution", cfg.distribution);
    get("pool_size", cfg.pool_size);
    get("train", cfg.train);
    get("hypothesis_depth", cfg.hypothesis_depth);
    get("trials", cfg.trials);
    get("seed", cfg.seed);
    get("out", cfg.out);
    get("workers", cfg.workers);
    get("timestamp", cfg.timestamp);

    if (cfg.kind != "compile-sweep" && cfg.kind != "gen-gap")
        throw parse_error("experiment config: unknown kind '" + cfg.kind + "'");
    if (cfg.trials < 1) throw parse_error("experiment config: trials must be >= 1");
    if (cfg.workers < 1) throw parse_error("experiment config: workers must be >= 1");
    if (!std::is_sorted(cfg.m_schedule.begin(), cfg.m_schedule.end()) ||
        std::adjacent_find(cfg.m_schedule.begin(), cfg.m_schedule.end()) !=
            cfg.m_schedule.end())
        throw parse_error("experiment config: m_schedule must be strictly increasing");
    if (cfg.distribution != "haar" && cfg.distribution != "finite")
        throw parse_error("experiment config: distribution must be haar or finite");
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open config: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_experiment_config(text);
}

void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn) {
    const int nthreads = std::max(1, std::min<int>(workers, static_cast<int>(count)));
    if (nthreads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

CompileSweepRecord experiment_compile_sweep(const ExperimentConfig& config) {
    std::vector<std::pair<int, int>> tasks;  // (n, trial)
    for (int n : config.ns)
        for (int trial = 0; trial < config.trials; ++trial) tasks.emplace_back(n, trial);

    CompileSweepRecord record;
    record.rows.resize(tasks.size());
    parallel_for(tasks.size(), config.workers, [&](std::size_t i) {
        const auto [n, trial] = tasks[i];
        const std::uint64_t trial_seed =
            derive_seed(config.seed, static_cast<std::uint64_t>(n),
                        static_cast<std::uint64_t>(trial));
        const auto t0 = std::chrono::steady_clock::now();
        const Circuit target = random_gate_circuit(n, config.max_gates, trial_seed);
        const auto normalized = normalize_circuit(target);
        const CompiledAnsatz compiled = compile_to_ansatz(target);
        const VerificationResult v =
            verify_compilation(compiled, target, config.tolerance);
        const auto t1 = std::chrono::steady_clock::now();

        CompileSweepRow& row = record.rows[i];
        row.n = n;
        row.trial = trial;
        row.seed = trial_seed;
        row.gate_count = static_cast<int>(target.gates.size());
        row.normalized_length = static_cast<int>(normalized.size());
        row.layers_used = compiled.layers_used;
        row.residual = v.residual;
        row.phase = v.phase;
        row.ok = v.ok && compiled.layers_used <= 2 * row.normalized_length;
        row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    });
    std::sort(record.rows.begin(), record.rows.end(),
              [](const CompileSweepRow& a, const CompileSweepRow& b) {
                  return std::tie(a.n, a.trial) < std::tie(b.n, b.trial);
              });
    record.all_ok = std::all_of(record.rows.begin(), record.rows.end(),
                                [](const CompileSweepRow& r) { return r.ok; });
    if (!config.out.empty()) write_compile_sweep_csv(record, config);
    return record;
}

namespace {

ParamVector random_params(const AnsatzShape& shape, std::uint64_t seed) {
    Rng rng(seed);
    ParamVector theta(param_count(shape));
    for (auto& t : theta) t = rng.angle();
    return theta;
}

}  // namespace

GenGapRecord experiment_generalization_gap(const ExperimentConfig& config) {
    const bool finite = config.distribution == "finite";
    const AnsatzShape shape{config.n, config.hypothesis_depth};
    const StatePool pool =
        finite ? make_state_pool(config.n, config.pool_size, derive_seed(config.seed, 777))
               : StatePool{};

    std::vector<std::pair<std::size_t, int>> tasks;  // (m, trial)
    for (std::size_t m : config.m_schedule)
        for (int trial = 0; trial < config.trials; ++trial) tasks.emplace_back(m, trial);

    std::vector<std::vector<GenGapRow>> per_task(tasks.size());
    parallel_for(tasks.size(), config.workers, [&](std::size_t i) {
        const auto [m, trial] = tasks[i];
        const std::uint64_t tseed =
            derive_seed(config.seed, static_cast<std::uint64_t>(trial), m);
        const Circuit target =
            random_concept_circuit(config.n, config.c, derive_seed(config.seed,
                                                                   static_cast<std::uint64_t>(trial)));
        const Dataset data =
            finite ? generate_dataset_from_pool(target, pool, m, derive_seed(tseed, 1))
                   : generate_dataset(target, m, derive_seed(tseed, 1));

        auto risk_of = [&](const AnsatzShape& sh, const ParamVector& theta) {
            if (finite) return exact_risk_on_pool(sh, theta, target, pool);
            return estimate_risk(sh, theta, target, config.n_eval, derive_seed(tseed, 2))
                .mean;
        };
        auto emit = [&](const std::string& name, const AnsatzShape& sh,
                        const ParamVector& theta) {
            const double rhat = empirical_risk(sh, theta, data);
            const double r = risk_of(sh, theta);
            per_task[i].push_back({m, trial, name, rhat, r, std::abs(rhat - r)});
        };

        const CompiledAnsatz compiled = compile_to_ansatz(target);
        emit("compiled", compiled.shape, compiled.theta);
        for (int k = 0; k < config.num_random_hypotheses; ++k)
            emit("random" + std::to_string(k), shape,
                 random_params(shape, derive_seed(tseed, 100 + static_cast<std::uint64_t>(k))));
        if (config.train) {
            TrainConfig tc;
            tc.seed = derive_seed(tseed, 3);
            emit("trained", shape, train_erm(shape, data, tc).theta);
        }

        if (finite) {
            // coarse hypothesis grid over the first two parameters, 8 points each
            std::vector<std::pair<double, double>> risks;
            for (int a = 0; a < 8; ++a) {
                for (int b = 0; b < 8; ++b) {
                    ParamVector theta(param_count(shape), 0.0);
                    theta[0] = kTwoPi * a / 8.0;
                    theta[1] = kTwoPi * b / 8.0;
                    risks.emplace_back(empirical_risk(shape, theta, data),
                                       exact_risk_on_pool(shape, theta, target, pool));
                }
            }
            const ErmGapResult gap = erm_gap_check(risks);
            per_task[i].push_back(
                {m, trial, "erm_gap", gap.gap, gap.bound, gap.holds ? 1.0 : 0.0});
        }
    });

    GenGapRecord record;
    for (auto& rows : per_task)
        record.rows.insert(record.rows.end(), rows.begin(), rows.end());
    std::sort(record.rows.begin(), record.rows.end(),
              [](const GenGapRow& a, const GenGapRow& b) {
                  return std::tie(a.m, a.trial, a.hypothesis) <
                         std::tie(b.m, b.trial, b.hypothesis);
              });
    record.all_ok = std::all_of(record.rows.begin(), record.rows.end(),
                                [](const GenGapRow& r) {
                                    if (r.hypothesis == "erm_gap") return r.abs_gap == 1.0;
                                    return r.rhat >= 0.0 && r.rhat <= 1.0 && r.risk >= 0.0 &&
                                           r.risk <= 1.0 + 1e-12;
                                });
    if (!config.out.empty()) write_gen_gap_csv(record, config);
    return record;
}

namespace {

std::ofstream open_csv(const ExperimentConfig& config) {
    std::ofstream out(config.out, std::ios::binary);
    if (!out) throw parse_error("cannot write CSV: " + config.out);
    if (config.timestamp) {
        const std::time_t now = std::time(nullptr);
        char buf[64];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        out << "# generated " << buf << "\n";
    }
    return out;
}

}  // namespace

void write_compile_sweep_csv(const CompileSweepRecord& record,
                             const ExperimentConfig& config) {
    std::ofstream out = open_csv(config);
    // wall_ms is inherently run-dependent; it is dropped together with the
    // timestamp so --no-timestamp output is byte-stable
    out << "n,trial,seed,gates,normalized_length,layers_used,residual,phase,ok";
    if (config.timestamp) out << ",wall_ms";
    out << "\n";
    for (const auto& r : record.rows) {
        out << r.n << "," << r.trial << "," << r.seed << "," << r.gate_count << ","
            << r.normalized_length << "," << r.layers_used << ","
            << format_double(r.residual) << "," << format_double(r.phase) << ","
            << (r.ok ? 1 : 0);
        if (config.timestamp) out << "," << format_double(r.wall_ms);
        out << "\n";
    }
}

void write_gen_gap_csv(const GenGapRecord& record, const ExperimentConfig& config) {
    std::ofstream out = open_csv(config);
    out << "m,trial,hypothesis,rhat,risk,abs_gap\n";
    for (const auto& r : record.rows)
        out << r.m << "," << r.trial << "," << r.hypothesis << ","
            << format_double(r.rhat) << "," << format_double(r.risk) << ","
            << format_double(r.abs_gap) << "\n";
}

}  // namespace uqcpac
