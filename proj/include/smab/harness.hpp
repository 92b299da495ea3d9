#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "smab/environment.hpp"
#include "smab/policies.hpp"
#include "smab/rng.hpp"
#include "smab/run_state.hpp"

namespace smab {

struct ExperimentConfig {
    EnvironmentSpec env_spec;
    std::vector<PolicyConfig> policies;
    int runs = 1000;
    int horizon = 500;
    double initial_budget = 0.5;
    std::uint64_t master_seed = 0;
    // Common random numbers: when true, every policy sees the same sampled
    // environment in run i, which cuts comparison variance.
    bool shared_environments = true;

    void validate() const;  // throws ConfigError
    bool operator==(const ExperimentConfig&) const = default;
};

struct RunTrace {
    std::vector<double> budget_trajectory;  // post-update balance per stage, zero after ruin
    std::optional<int> ruin_time;           // first stage with zero balance
    std::vector<int> actions;               // length min(ruin_time, horizon)
    double final_budget = 0.0;
};

struct PolicyCurves {
    PolicyConfig policy;
    std::vector<double> survival;        // S(t): fraction of runs not ruined by stage t
    std::vector<double> average_budget;  // mean balance across all runs (ruined count as 0)
    double survival_at_horizon = 0.0;
    double average_budget_at_horizon = 0.0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<PolicyCurves> policies;
};

// Named sub-streams of the experiment. `environment` deliberately ignores
// the policy key so all policies share run i's environment;
// `environment_per_policy` is its unshared-mode counterpart.
enum class StreamPurpose : std::uint64_t {
    environment = 1,
    rewards = 2,
    policy_rng = 3,
    environment_per_policy = 4,
};

// Deterministic, collision-resistant seed derivation. `policy_key` is
// PolicyConfig::stable_key(), so streams follow the policy's parameters
// rather than its position in the config.
std::uint64_t seed_schedule(std::uint64_t master_seed, std::uint64_t run_index,
                            std::uint64_t policy_key, StreamPurpose purpose);

// One seeded episode: select -> draw -> update until the horizon or ruin.
// After ruin the trajectory is filled with zeros out to the horizon.
RunTrace run_episode(const Environment& env, const PolicyConfig& policy, double initial_budget,
                     int horizon, RngEngine& reward_rng, RngEngine& policy_rng);

// All traces, indexed [policy][run]. The parallel variant distributes runs
// over OpenMP threads; per-run seeding and keyed storage make its output
// identical to the serial reference's.
std::vector<std::vector<RunTrace>> run_experiment_traces(const ExperimentConfig& config,
                                                         int num_threads = 0);
std::vector<std::vector<RunTrace>> run_experiment_traces_serial(const ExperimentConfig& config);

// Curve aggregation; reduces runs in index order so the result does not
// depend on how the traces were produced.
ExperimentResult aggregate_result(const ExperimentConfig& config,
                                  const std::vector<std::vector<RunTrace>>& traces);

ExperimentResult run_experiment(const ExperimentConfig& config, int num_threads = 0);
ExperimentResult run_experiment_serial(const ExperimentConfig& config);

}  // namespace smab
