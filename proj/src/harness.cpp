#include "smab/harness.hpp"

#include <exception>
#include <string>

#include <omp.h>

#include "smab/errors.hpp"

namespace smab {

void ExperimentConfig::validate() const {
    env_spec.validate();
    if (policies.empty()) throw ConfigError("experiment needs at least one policy");
    for (const PolicyConfig& policy : policies) policy.validate();
    if (runs < 1) throw ConfigError("experiment.runs must be >= 1");
    if (horizon < 1) throw ConfigError("experiment.horizon must be >= 1");
    if (!(initial_budget > 0.0)) throw ConfigError("experiment.initial_budget must be > 0");
}

std::uint64_t seed_schedule(std::uint64_t master_seed, std::uint64_t run_index,
                            std::uint64_t policy_key, StreamPurpose purpose) {
    std::uint64_t hash = mix64(master_seed);
    hash = mix64(hash ^ (run_index * kGolden64 + 1));
    if (purpose != StreamPurpose::environment) hash = mix64(hash ^ (policy_key * kGolden64 + 2));
    hash = mix64(hash ^ static_cast<std::uint64_t>(purpose));
    return hash;
}

RunTrace run_episode(const Environment& env, const PolicyConfig& policy, double initial_budget,
                     int horizon, RngEngine& reward_rng, RngEngine& policy_rng) {
    if (!(initial_budget > 0.0)) throw UsageError("run_episode: initial budget must be > 0");
    if (horizon < 1) throw UsageError("run_episode: horizon must be >= 1");

    RunState state = RunState::initial(env.arm_count(), initial_budget);
    RunTrace trace;
    trace.actions.reserve(static_cast<std::size_t>(horizon));

    for (int stage = 1; stage <= horizon; ++stage) {
        const int arm = select_action(policy, state, horizon, policy_rng);
        const double reward = draw_reward(env, arm, reward_rng);
        trace.actions.push_back(arm);
        state.apply(arm, reward);
        if (state.ruined) break;
    }

    trace.budget_trajectory = std::move(state.budget_trajectory);
    trace.budget_trajectory.resize(static_cast<std::size_t>(horizon), 0.0);
    trace.ruin_time = state.ruin_time;
    trace.final_budget = trace.budget_trajectory.back();
    return trace;
}

namespace {

void execute_run(const ExperimentConfig& config, const std::vector<std::uint64_t>& policy_keys,
                 int run_index, std::vector<std::vector<RunTrace>>& traces) {
    const auto run = static_cast<std::uint64_t>(run_index);

    Environment shared_env;
    if (config.shared_environments) {
        RngEngine env_rng(seed_schedule(config.master_seed, run, 0, StreamPurpose::environment));
        shared_env = sample_environment(config.env_spec, env_rng);
    }

    for (std::size_t p = 0; p < config.policies.size(); ++p) {
        Environment own_env;
        if (!config.shared_environments) {
            RngEngine env_rng(seed_schedule(config.master_seed, run, policy_keys[p],
                                            StreamPurpose::environment_per_policy));
            own_env = sample_environment(config.env_spec, env_rng);
        }
        const Environment& env = config.shared_environments ? shared_env : own_env;

        RngEngine reward_rng(
            seed_schedule(config.master_seed, run, policy_keys[p], StreamPurpose::rewards));
        RngEngine policy_rng(
            seed_schedule(config.master_seed, run, policy_keys[p], StreamPurpose::policy_rng));
        traces[p][static_cast<std::size_t>(run_index)] =
            run_episode(env, config.policies[p], config.initial_budget, config.horizon,
                        reward_rng, policy_rng);
    }
}

std::vector<std::uint64_t> stable_policy_keys(const std::vector<PolicyConfig>& policies) {
    std::vector<std::uint64_t> keys;
    keys.reserve(policies.size());
    for (const PolicyConfig& policy : policies) keys.push_back(policy.stable_key());
    return keys;
}

std::vector<std::vector<RunTrace>> allocate_traces(const ExperimentConfig& config) {
    return std::vector<std::vector<RunTrace>>(
        config.policies.size(), std::vector<RunTrace>(static_cast<std::size_t>(config.runs)));
}

}  // namespace

std::vector<std::vector<RunTrace>> run_experiment_traces(const ExperimentConfig& config,
                                                         int num_threads) {
    config.validate();
    const std::vector<std::uint64_t> keys = stable_policy_keys(config.policies);
    std::vector<std::vector<RunTrace>> traces = allocate_traces(config);

    const int threads = num_threads > 0 ? num_threads : omp_get_max_threads();
    std::exception_ptr failure;

    // Runs have wildly uneven cost (early ruin is cheap, survivors are not),
    // hence the dynamic schedule. Exceptions cannot cross the parallel
    // region, so the first one is parked and rethrown after the join.
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int run = 0; run < config.runs; ++run) {
        try {
            execute_run(config, keys, run, traces);
        } catch (...) {
#pragma omp critical(smab_harness_failure)
            if (!failure) failure = std::current_exception();
        }
    }

    if (failure) std::rethrow_exception(failure);
    return traces;
}

std::vector<std::vector<RunTrace>> run_experiment_traces_serial(const ExperimentConfig& config) {
    config.validate();
    const std::vector<std::uint64_t> keys = stable_policy_keys(config.policies);
    std::vector<std::vector<RunTrace>> traces = allocate_traces(config);
    for (int run = 0; run < config.runs; ++run) execute_run(config, keys, run, traces);
    return traces;
}

ExperimentResult aggregate_result(const ExperimentConfig& config,
                                  const std::vector<std::vector<RunTrace>>& traces) {
    if (traces.size() != config.policies.size())
        throw UsageError("aggregate_result: trace/policy count mismatch");

    const auto horizon = static_cast<std::size_t>(config.horizon);
    ExperimentResult result{.config = config, .policies = {}};
    result.policies.reserve(config.policies.size());

    for (std::size_t p = 0; p < config.policies.size(); ++p) {
        if (traces[p].size() != static_cast<std::size_t>(config.runs))
            throw UsageError("aggregate_result: trace/run count mismatch");

        PolicyCurves curves;
        curves.policy = config.policies[p];
        std::vector<long> surviving(horizon, 0);
        curves.average_budget.assign(horizon, 0.0);

        // Runs are reduced in index order: the curves are identical no
        // matter which thread produced which trace.
        for (const RunTrace& trace : traces[p]) {
            for (std::size_t t = 0; t < horizon; ++t) {
                const int stage = static_cast<int>(t) + 1;
                if (!trace.ruin_time || *trace.ruin_time > stage) surviving[t] += 1;
                curves.average_budget[t] += trace.budget_trajectory[t];
            }
        }

        const double run_count = static_cast<double>(config.runs);
        curves.survival.assign(horizon, 0.0);
        for (std::size_t t = 0; t < horizon; ++t) {
            curves.survival[t] = static_cast<double>(surviving[t]) / run_count;
            curves.average_budget[t] /= run_count;
        }
        curves.survival_at_horizon = curves.survival.back();
        curves.average_budget_at_horizon = curves.average_budget.back();
        result.policies.push_back(std::move(curves));
    }
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config, int num_threads) {
    return aggregate_result(config, run_experiment_traces(config, num_threads));
}

ExperimentResult run_experiment_serial(const ExperimentConfig& config) {
    return aggregate_result(config, run_experiment_traces_serial(config));
}

}  // namespace smab
