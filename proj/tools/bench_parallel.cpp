// Times the OpenMP run loop against the serial reference on the same config
// and verifies that both produce identical curves.

#include <chrono>
#include <cstdint>
#include <iostream>

#include <CLI11.hpp>
#include <omp.h>

#include "smab/harness.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool same_curves(const smab::ExperimentResult& a, const smab::ExperimentResult& b) {
    if (a.policies.size() != b.policies.size()) return false;
    for (std::size_t p = 0; p < a.policies.size(); ++p) {
        if (a.policies[p].survival != b.policies[p].survival) return false;
        if (a.policies[p].average_budget != b.policies[p].average_budget) return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP harness benchmark"};
    int runs = 64;
    int horizon = 200;
    int paths = 50;
    int arms = 8;
    double lambda = 10.0;
    int max_threads = omp_get_max_threads();
    std::uint64_t seed = 7;
    app.add_option("--runs", runs, "runs per policy");
    app.add_option("--horizon", horizon, "stage horizon");
    app.add_option("--paths", paths, "bootstrap paths per estimate");
    app.add_option("--arms", arms, "arm count");
    app.add_option("--lambda", lambda, "ruin aversion of the bootstrapped policy");
    app.add_option("--max-threads", max_threads, "largest thread count to time");
    app.add_option("--seed", seed, "master seed");
    CLI11_PARSE(app, argc, argv);

    smab::ExperimentConfig config;
    config.env_spec.arm_count = arms;
    config.runs = runs;
    config.horizon = horizon;
    config.master_seed = seed;
    config.policies = {
        smab::PolicyConfig{.kind = smab::PolicyKind::ucb, .alpha = 10.0},
        smab::PolicyConfig{.kind = smab::PolicyKind::ruin_averse,
                           .alpha = 10.0,
                           .lambda = lambda,
                           .path_count = paths},
    };

    std::cout << "runs=" << runs << " horizon=" << horizon << " paths=" << paths
              << " arms=" << arms << " lambda=" << lambda << "\n\n";

    auto start = Clock::now();
    const smab::ExperimentResult reference = smab::run_experiment_serial(config);
    const double serial_seconds = seconds_since(start);
    std::cout << "serial reference      " << serial_seconds << " s\n";

    bool all_match = true;
    for (int threads = 1; threads <= max_threads; threads *= 2) {
        start = Clock::now();
        const smab::ExperimentResult parallel = smab::run_experiment(config, threads);
        const double parallel_seconds = seconds_since(start);
        const bool matches = same_curves(reference, parallel);
        all_match = all_match && matches;
        std::cout << "openmp threads=" << threads << "     " << parallel_seconds << " s"
                  << "  speedup=" << serial_seconds / parallel_seconds
                  << (matches ? "  curves: identical" : "  curves: MISMATCH") << '\n';
    }

    if (!all_match) {
        std::cerr << "\nparallel curves diverged from the serial reference\n";
        return 1;
    }
    return 0;
}
