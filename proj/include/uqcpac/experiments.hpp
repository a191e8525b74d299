// experiments.hpp
// Random concept-circuit generation and the experiment drivers behind the
// CLI: compile-sweep (end-to-end compile/verify sweep) and gen-gap
// (generalization-gap measurements, optionally with exact finite-support
// risks and ERM-gap checks).

#pragma once

#include "uqcpac/compiler.hpp"
#include "uqcpac/core.hpp"
#include "uqcpac/learning.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace uqcpac {

// Gate count uniform in [1, max_gates]; kinds drawn from H, RX(uniform
// angle), Haar-random U1, and CNOT on a random ordered pair.
Circuit random_gate_circuit(int n, int max_gates, std::uint64_t seed);

// Same draw with the concept-class budget max_gates = n^c.
Circuit random_concept_circuit(int n, int c, std::uint64_t seed);

struct ExperimentConfig {
    std::string kind = "compile-sweep";  // or "gen-gap"

    // compile-sweep
    std::vector<int> ns = {2, 3, 4, 5};
    int max_gates = 12;
    double tolerance = 1e-9;

    // gen-gap
    int n = 2;
    int c = 1;
    std::vector<std::size_t> m_schedule = {8, 32, 128, 512};
    int num_random_hypotheses = 2;
    std::size_t n_eval = 4096;
    std::string distribution = "haar";  // or "finite"
    std::size_t pool_size = 50;
    bool train = false;
    int hypothesis_depth = 1;

    // common
    int trials = 200;
    std::uint64_t seed = 1;
    std::string out;  // CSV path; empty keeps results in memory only
    int workers = 1;
    bool timestamp = true;
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

struct CompileSweepRow {
    int n = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    int gate_count = 0;
    int normalized_length = 0;
    int layers_used = 0;
    double residual = 0.0;
    double phase = 0.0;
    bool ok = false;
    double wall_ms = 0.0;
};

struct CompileSweepRecord {
    std::vector<CompileSweepRow> rows;
    bool all_ok = false;
};

CompileSweepRecord experiment_compile_sweep(const ExperimentConfig& config);

struct GenGapRow {
    std::size_t m = 0;
    int trial = 0;
    std::string hypothesis;  // "compiled", "random<k>", "trained", "erm_gap"
    double rhat = 0.0;       // for erm_gap rows: the gap
    double risk = 0.0;       // for erm_gap rows: the bound
    double abs_gap = 0.0;    // for erm_gap rows: holds (1/0)
};

struct GenGapRecord {
    std::vector<GenGapRow> rows;
    bool all_ok = false;
};

GenGapRecord experiment_generalization_gap(const ExperimentConfig& config);

// Deterministic CSV emission (doubles as %.17g; header timestamp comment
// suppressed when config.timestamp is false).
void write_compile_sweep_csv(const CompileSweepRecord& record,
                             const ExperimentConfig& config);
void write_gen_gap_csv(const GenGapRecord& record, const ExperimentConfig& config);

// Runs fn(0..count-1) on up to `workers` threads; exceptions re-thrown.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace uqcpac
