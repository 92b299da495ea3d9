#include "smab/policies.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "smab/errors.hpp"
#include "smab/estimators.hpp"

namespace smab {

bool uses_bootstrap(PolicyKind kind) {
    return kind == PolicyKind::ruin_averse || kind == PolicyKind::ruin_averse_ucb_budget;
}

bool uses_budget_bonus(PolicyKind kind) {
    return kind == PolicyKind::ucb_budget || kind == PolicyKind::ruin_averse_ucb_budget;
}

const char* policy_kind_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::ucb: return "UCB";
        case PolicyKind::ucb_budget: return "UCBBudget";
        case PolicyKind::ruin_averse: return "RuinAverse";
        case PolicyKind::ruin_averse_ucb_budget: return "RuinAverseUCBBudget";
    }
    throw UsageError("unknown policy kind");
}

PolicyKind policy_kind_from_name(const std::string& name) {
    if (name == "UCB") return PolicyKind::ucb;
    if (name == "UCBBudget") return PolicyKind::ucb_budget;
    if (name == "RuinAverse") return PolicyKind::ruin_averse;
    if (name == "RuinAverseUCBBudget") return PolicyKind::ruin_averse_ucb_budget;
    throw ConfigError("unknown policy kind '" + name +
                      "' (expected UCB, UCBBudget, RuinAverse or RuinAverseUCBBudget)");
}

void PolicyConfig::validate() const {
    if (!(alpha > 0.0)) throw ConfigError("policy.alpha must be > 0");
    if (uses_bootstrap(kind)) {
        if (lambda < 0.0) throw ConfigError("policy.lambda must be >= 0");
        if (path_count < 1) throw ConfigError("policy.paths must be >= 1");
    }
}

std::uint64_t PolicyConfig::stable_key() const {
    std::uint64_t key = mix64(static_cast<std::uint64_t>(kind) + 1);
    key = mix64(key ^ std::bit_cast<std::uint64_t>(alpha));
    if (uses_bootstrap(kind)) {
        // lambda and path_count are inert for the sample-mean kinds and are
        // left out of their identity.
        key = mix64(key ^ std::bit_cast<std::uint64_t>(lambda));
        key = mix64(key ^ static_cast<std::uint64_t>(path_count));
    }
    return key;
}

double ucb_bonus(double alpha, int stage, int pulls) {
    if (pulls < 1) throw UsageError("ucb_bonus: pulls must be >= 1");
    if (stage < 1) throw UsageError("ucb_bonus: stage must be >= 1");
    return std::sqrt(alpha * std::log(static_cast<double>(stage)) / static_cast<double>(pulls));
}

double budget_bonus(double alpha, double budget, int pulls) {
    if (pulls < 1) throw UsageError("budget_bonus: pulls must be >= 1");
    return std::sqrt(alpha * std::log(budget + 1.0) / static_cast<double>(pulls));
}

ActionScores select_action_scored(const PolicyConfig& config, const RunState& state, int horizon,
                                  RngEngine& rng) {
    if (state.ruined) throw UsageError("select_action: run is already ruined");
    if (state.stage > horizon) throw UsageError("select_action: stage exceeds horizon");

    const int arms = state.arm_count();
    ActionScores scores;
    scores.values.assign(static_cast<std::size_t>(arms),
                         std::numeric_limits<double>::quiet_NaN());
    scores.bonuses.assign(static_cast<std::size_t>(arms),
                          std::numeric_limits<double>::quiet_NaN());

    // Forced initialization: every arm gets pulled once, in index order,
    // before any score is computed.
    for (int k = 0; k < arms; ++k) {
        if (state.pull_counts[static_cast<std::size_t>(k)] == 0) {
            scores.bonuses[static_cast<std::size_t>(k)] =
                std::numeric_limits<double>::infinity();
            scores.chosen = k;
            scores.forced = true;
            return scores;
        }
    }

    for (int k = 0; k < arms; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        const int pulls = state.pull_counts[idx];
        if (uses_bootstrap(config.kind)) {
            const EstimatorInput input{.arm_rewards = state.history.arm(k),
                                       .current_budget = state.budget,
                                       .remaining_horizon = horizon - state.stage + 1,
                                       .lambda = config.lambda,
                                       .path_count = config.path_count};
            scores.values[idx] = bootstrap_action_value(input, rng);
        } else {
            scores.values[idx] = q_value(state.history.arm(k));
        }
        scores.bonuses[idx] = uses_budget_bonus(config.kind)
                                  ? budget_bonus(config.alpha, state.budget, pulls)
                                  : ucb_bonus(config.alpha, state.stage, pulls);
    }

    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < arms; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        best = std::max(best, scores.values[idx] + scores.bonuses[idx]);
    }
    std::vector<int> ties;
    for (int k = 0; k < arms; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        if (scores.values[idx] + scores.bonuses[idx] == best) ties.push_back(k);
    }
    scores.chosen = ties.size() == 1 ? ties.front() : ties[uniform_index(rng, ties.size())];
    return scores;
}

int select_action(const PolicyConfig& config, const RunState& state, int horizon,
                  RngEngine& rng) {
    return select_action_scored(config, state, horizon, rng).chosen;
}

}  // namespace smab
