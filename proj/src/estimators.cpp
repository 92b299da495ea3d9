#include "smab/estimators.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "smab/errors.hpp"
#include "smab/run_state.hpp"

namespace smab {

void EstimatorInput::validate() const {
    if (arm_rewards.empty())
        throw UsageError("estimator: arm has no observed rewards");
    if (!(current_budget > 0.0))
        throw UsageError("estimator: current budget must be > 0");
    if (remaining_horizon < 1)
        throw UsageError("estimator: remaining horizon must be >= 1");
    if (lambda < 0.0)
        throw UsageError("estimator: lambda must be >= 0");
    if (path_count < 1)
        throw UsageError("estimator: path count must be >= 1");
}

double q_value(std::span<const double> arm_rewards) {
    if (arm_rewards.empty())
        throw UsageError("q_value: arm has no observed rewards");
    const double total = std::accumulate(arm_rewards.begin(), arm_rewards.end(), 0.0);
    return total / static_cast<double>(arm_rewards.size());
}

PathOutcome simulate_path(std::span<const double> arm_rewards, double current_budget,
                          int horizon, RngEngine& rng) {
    if (arm_rewards.empty()) throw UsageError("simulate_path: empty reward set");
    if (!(current_budget > 0.0)) throw UsageError("simulate_path: budget must be > 0");
    if (horizon < 1) throw UsageError("simulate_path: horizon must be >= 1");

    const std::size_t count = arm_rewards.size();
    double budget = current_budget;
    double total = 0.0;
    for (int step = 1; step <= horizon; ++step) {
        const double reward = arm_rewards[uniform_index(rng, count)];
        budget = update_budget(budget, reward);
        if (budget == 0.0) return {.ruined = true, .reward_sum = 0.0, .steps = step};
        total += reward;
    }
    return {.ruined = false, .reward_sum = total, .steps = horizon};
}

BootstrapEstimate bootstrap_estimate(const EstimatorInput& input, RngEngine& rng) {
    input.validate();

    long ruined_paths = 0;
    long total_steps = 0;
    double survivor_sum = 0.0;
    double survivor_sum_sq = 0.0;
    for (int m = 0; m < input.path_count; ++m) {
        const PathOutcome path =
            simulate_path(input.arm_rewards, input.current_budget, input.remaining_horizon, rng);
        total_steps += path.steps;
        if (path.ruined) {
            ++ruined_paths;
        } else {
            survivor_sum += path.reward_sum;
            survivor_sum_sq += path.reward_sum * path.reward_sum;
        }
    }

    const double paths = static_cast<double>(input.path_count);
    const double ruin_payoff = -input.current_budget - input.lambda;
    // Keeping the ruin term factored as count * payoff makes the lambda
    // dependence of the estimate exactly linear for a fixed path sample.
    const double value = (static_cast<double>(ruined_paths) * ruin_payoff + survivor_sum) / paths;

    double variance = 0.0;
    if (input.path_count > 1) {
        const double payoff_sum_sq =
            static_cast<double>(ruined_paths) * ruin_payoff * ruin_payoff + survivor_sum_sq;
        variance = std::max(0.0, (payoff_sum_sq - paths * value * value) / (paths - 1.0));
    }

    return {.value = value,
            .ruin_fraction = static_cast<double>(ruined_paths) / paths,
            .payoff_variance = variance,
            .mean_path_length = static_cast<double>(total_steps) / paths};
}

double bootstrap_action_value(const EstimatorInput& input, RngEngine& rng) {
    return bootstrap_estimate(input, rng).value;
}

namespace {

void enumerate_payoffs(std::span<const double> rewards, double ruin_payoff, double budget,
                       double partial_sum, int depth, int horizon, double probability,
                       double& accumulator) {
    const double branch_probability = probability / static_cast<double>(rewards.size());
    for (const double reward : rewards) {
        const double next_budget = update_budget(budget, reward);
        if (next_budget == 0.0) {
            accumulator += branch_probability * ruin_payoff;
        } else if (depth + 1 == horizon) {
            accumulator += branch_probability * (partial_sum + reward);
        } else {
            enumerate_payoffs(rewards, ruin_payoff, next_budget, partial_sum + reward, depth + 1,
                              horizon, branch_probability, accumulator);
        }
    }
}

}  // namespace

double exact_action_value(std::span<const double> arm_rewards, double current_budget,
                          int horizon, double lambda) {
    if (arm_rewards.empty()) throw UsageError("exact_action_value: empty reward set");
    if (!(current_budget > 0.0)) throw UsageError("exact_action_value: budget must be > 0");
    if (horizon < 1) throw UsageError("exact_action_value: horizon must be >= 1");
    if (lambda < 0.0) throw UsageError("exact_action_value: lambda must be >= 0");

    long paths = 1;
    for (int step = 0; step < horizon; ++step) {
        paths *= static_cast<long>(arm_rewards.size());
        if (paths > kMaxExactPaths)
            throw UsageError("exact_action_value: " + std::to_string(arm_rewards.size()) + "^" +
                             std::to_string(horizon) + " paths exceeds the enumeration cap");
    }

    double accumulator = 0.0;
    enumerate_payoffs(arm_rewards, -current_budget - lambda, current_budget, 0.0, 0, horizon, 1.0,
                      accumulator);
    return accumulator;
}

}  // namespace smab
