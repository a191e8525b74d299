// uqcpac: compile circuits into the universal ansatz, verify, generate
// datasets, train, evaluate sample-complexity bounds, and run experiments.
//
// Exit codes: 0 success, 1 domain/parse errors, 2 failed checks.

#include "uqcpac/experiments.hpp"
#include "uqcpac/io.hpp"
#include "uqcpac/learning.hpp"
#include "uqcpac/metrics.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCheckFailed = 2;

int effective_workers(int workers) {
    if (const char* env = std::getenv("UQCPAC_WORKERS")) {
        const int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return workers;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"universal-ansatz circuit compiler and PAC-learning testbench"};
    app.require_subcommand(1);

    int workers = 1;
    bool no_timestamp = false;
    app.add_option("--workers", workers, "worker thread count")->check(CLI::PositiveNumber);
    app.add_flag("--no-timestamp", no_timestamp, "suppress CSV timestamp header");

    // compile
    auto* compile = app.add_subcommand("compile", "compile a circuit into ansatz parameters");
    std::string compile_circuit_path, compile_out;
    int compile_depth = 0;
    compile->add_option("circuit", compile_circuit_path, "circuit JSON file")->required();
    compile->add_option("--depth", compile_depth, "fixed layer budget (default: layers used)");
    compile->add_option("--out", compile_out, "output parameter JSON path");

    // verify
    auto* verify = app.add_subcommand("verify", "verify compiled parameters against a circuit");
    std::string verify_params_path, verify_circuit_path;
    double verify_tol = 1e-9;
    verify->add_option("params", verify_params_path, "parameter JSON file")->required();
    verify->add_option("circuit", verify_circuit_path, "circuit JSON file")->required();
    verify->add_option("--tol", verify_tol, "phase-invariant residual tolerance");

    // gen-data
    auto* gen = app.add_subcommand("gen-data", "generate a Haar-input dataset for a circuit");
    std::string gen_circuit_path, gen_out;
    std::size_t gen_m = 0;
    std::uint64_t gen_seed = 1;
    gen->add_option("circuit", gen_circuit_path, "circuit JSON file")->required();
    gen->add_option("-m", gen_m, "sample count")->required();
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out", gen_out, "output dataset path")->required();

    // train
    auto* train = app.add_subcommand("train", "ERM training on a dataset");
    std::string train_data_path, train_shape, train_out;
    int train_restarts = 0, train_iters = 25;
    std::uint64_t train_seed = 1;
    train->add_option("data", train_data_path, "dataset file")->required();
    train->add_option("--shape", train_shape, "ansatz shape as n,D")->required();
    train->add_option("--restarts", train_restarts, "random restarts");
    train->add_option("--iters", train_iters, "coordinate-descent sweeps");
    train->add_option("--seed", train_seed, "RNG seed");
    train->add_option("--out", train_out, "output parameter JSON path");

    // complexity
    auto* complexity = app.add_subcommand("complexity", "Sample-complexity report");
    double cx_eps = 0.1, cx_delta = 0.01;
    uqcpac::ConceptClassParams cx_params;
    complexity->add_option("--eps", cx_eps, "accuracy epsilon in (0,1)")->required();
    complexity->add_option("--delta", cx_delta, "confidence delta in (0,1)")->required();
    complexity->add_option("--n", cx_params.n, "qubit count")->required();
    complexity->add_option("--c", cx_params.c, "gate-count exponent")->required();
    complexity->add_option("--K", cx_params.K, "discretization constant");
    complexity->add_option("--M", cx_params.M, "depth constant");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "run a configured experiment");
    std::string exp_kind, exp_config_path;
    experiment->add_option("kind", exp_kind, "compile-sweep | gen-gap")->required();
    experiment->add_option("--config", exp_config_path, "experiment config JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*compile) {
            const uqcpac::Circuit circuit = uqcpac::load_circuit(compile_circuit_path);
            std::optional<int> budget;
            if (compile_depth > 0) budget = compile_depth;
            const uqcpac::CompiledAnsatz compiled =
                uqcpac::compile_to_ansatz(circuit, budget);
            if (compile_out.empty())
                std::cout << uqcpac::serialize_params(compiled) << "\n";
            else
                uqcpac::save_params(compiled, compile_out);
            std::cerr << "compiled: n=" << compiled.shape.n
                      << " depth=" << compiled.shape.depth
                      << " layers_used=" << compiled.layers_used
                      << " global_phase=" << compiled.global_phase << "\n";
            return kExitOk;
        }
        if (*verify) {
            const uqcpac::CompiledAnsatz compiled = uqcpac::load_params(verify_params_path);
            const uqcpac::Circuit circuit = uqcpac::load_circuit(verify_circuit_path);
            const uqcpac::VerificationResult v =
                uqcpac::verify_compilation(compiled, circuit, verify_tol);
            std::cout << "ok=" << (v.ok ? "true" : "false")
                      << " residual=" << uqcpac::format_double(v.residual)
                      << " phase=" << uqcpac::format_double(v.phase) << "\n";
            return v.ok ? kExitOk : kExitCheckFailed;
        }
        if (*gen) {
            const uqcpac::Circuit circuit = uqcpac::load_circuit(gen_circuit_path);
            uqcpac::save_dataset(uqcpac::generate_dataset(circuit, gen_m, gen_seed), gen_out);
            std::cerr << "wrote " << gen_m << " pairs to " << gen_out << "\n";
            return kExitOk;
        }
        if (*train) {
            int n = 0, depth = 0;
            if (std::sscanf(train_shape.c_str(), "%d,%d", &n, &depth) != 2)
                throw uqcpac::parse_error("--shape must be n,D");
            const uqcpac::Dataset data = uqcpac::load_dataset(train_data_path);
            uqcpac::TrainConfig tc;
            tc.restarts = train_restarts;
            tc.max_sweeps = train_iters;
            tc.seed = train_seed;
            const uqcpac::AnsatzShape shape{n, depth};
            const uqcpac::TrainResult result = uqcpac::train_erm(shape, data, tc);
            const double rhat = uqcpac::empirical_risk(shape, result.theta, data);
            uqcpac::CompiledAnsatz out;
            out.shape = shape;
            out.theta = result.theta;
            out.layers_used = depth;
            if (train_out.empty())
                std::cout << uqcpac::serialize_params(out) << "\n";
            else
                uqcpac::save_params(out, train_out);
            std::cerr << "trained: empirical_risk=" << uqcpac::format_double(rhat)
                      << " sweeps=" << result.history.size() << "\n";
            return kExitOk;
        }
        if (*complexity) {
            const uqcpac::ComplexityReport r =
                uqcpac::sample_complexity(cx_eps, cx_delta, cx_params);
            std::cout << "e=" << uqcpac::format_double(r.e) << "\n"
                      << "grid_cells=" << r.grid_cells << "\n"
                      << "param_count=" << r.param_count << "\n"
                      << "ln_hypothesis_count="
                      << uqcpac::format_double(r.ln_hypothesis_count) << "\n"
                      << "ln_nu=" << uqcpac::format_double(r.ln_nu) << "\n"
                      << "nu=" << r.nu << "\n";
            return kExitOk;
        }
        if (*experiment) {
            uqcpac::ExperimentConfig cfg = uqcpac::load_experiment_config(exp_config_path);
            cfg.kind = exp_kind;
            if (app.count("--workers")) cfg.workers = workers;
            cfg.workers = effective_workers(cfg.workers);
            if (no_timestamp) cfg.timestamp = false;
            bool ok = false;
            if (exp_kind == "compile-sweep") {
                const auto record = uqcpac::experiment_compile_sweep(cfg);
                ok = record.all_ok;
                std::cerr << "compile-sweep: " << record.rows.size() << " trials, "
                          << (ok ? "all ok" : "FAILURES") << "\n";
            } else if (exp_kind == "gen-gap") {
                const auto record = uqcpac::experiment_generalization_gap(cfg);
                ok = record.all_ok;
                std::cerr << "gen-gap: " << record.rows.size() << " rows, "
                          << (ok ? "all ok" : "FAILURES") << "\n";
            } else {
                throw uqcpac::parse_error("unknown experiment kind: " + exp_kind);
            }
            return ok ? kExitOk : kExitCheckFailed;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
