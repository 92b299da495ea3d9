#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smab/rng.hpp"
#include "smab/run_state.hpp"

namespace smab {

// The four selection rules. The two *_budget kinds swap the stage-driven
// exploration bonus for a budget-driven one; the two ruin_averse kinds swap
// the sample-mean value estimate for the bootstrapped ruin-aware one.
enum class PolicyKind { ucb, ucb_budget, ruin_averse, ruin_averse_ucb_budget };

bool uses_bootstrap(PolicyKind kind);
bool uses_budget_bonus(PolicyKind kind);
const char* policy_kind_name(PolicyKind kind);  // "UCB", "UCBBudget", ...
PolicyKind policy_kind_from_name(const std::string& name);  // throws ConfigError

struct PolicyConfig {
    PolicyKind kind = PolicyKind::ucb;
    double alpha = 10.0;   // exploration weight, > 0
    double lambda = 0.0;   // ruin aversion, >= 0 (ruin-averse kinds only)
    int path_count = 100;  // bootstrap paths per estimate (ruin-averse kinds only)

    void validate() const;  // throws ConfigError

    // Stable 64-bit identity used by the seed schedule. Derived from the
    // parameters that affect behavior (kind and alpha, plus lambda and
    // path_count for the ruin-averse kinds), never from list position, so
    // reordering the policy list leaves every policy's streams unchanged
    // and identical configs share identical streams.
    std::uint64_t stable_key() const;

    bool operator==(const PolicyConfig&) const = default;
};

// Score breakdown of one selection. In a forced-initialization round the
// per-arm scores are not computed: unpulled arms carry an infinite bonus
// sentinel and the lowest-indexed one is chosen outright.
struct ActionScores {
    std::vector<double> values;
    std::vector<double> bonuses;
    int chosen = 0;
    bool forced = false;
};

// sqrt(alpha * ln(stage) / pulls); the stage is the 1-based decision stage.
double ucb_bonus(double alpha, int stage, int pulls);

// sqrt(alpha * ln(budget + 1) / pulls); the +1 keeps the logarithm
// nonnegative for live budgets below 1.
double budget_bonus(double alpha, double budget, int pulls);

// Picks the next arm. Unpulled arms are initialized first (lowest index
// first); afterwards the arm maximizing value + bonus wins, with exact
// score ties broken uniformly at random. The budget feeding the bootstrap
// and the budget bonus is the balance before this stage's reward lands.
ActionScores select_action_scored(const PolicyConfig& config, const RunState& state, int horizon,
                                  RngEngine& rng);
int select_action(const PolicyConfig& config, const RunState& state, int horizon, RngEngine& rng);

}  // namespace smab
