#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "smab/errors.hpp"

namespace smab {

// Budget transition. Ruin is absorbing: once the budget is zero it stays
// zero. For a live budget the sum is clamped at zero, and a clamped result
// of exactly zero is the ruin event. In the no-ruin region this is a plain
// sum with no rounding of its own.
inline double update_budget(double budget, double reward) {
    if (budget <= 0.0) return 0.0;
    return std::max(0.0, budget + reward);
}

// Per-arm ordered multisets of observed rewards, in pull order.
struct RewardHistory {
    std::vector<std::vector<double>> per_arm;

    explicit RewardHistory(int arm_count = 0) : per_arm(static_cast<std::size_t>(arm_count)) {}

    void add(int arm, double reward) { per_arm[static_cast<std::size_t>(arm)].push_back(reward); }
    const std::vector<double>& arm(int k) const { return per_arm[static_cast<std::size_t>(k)]; }
    int arm_count() const { return static_cast<int>(per_arm.size()); }
};

// Everything one live run carries between stages. `stage` is the 1-based
// index of the decision about to be made; `budget` is the balance before
// that decision's reward lands. `budget_trajectory[s-1]` holds the
// post-update balance of stage s.
struct RunState {
    int stage = 1;
    double budget = 0.0;
    double initial_budget = 0.0;
    bool ruined = false;
    std::optional<int> ruin_time;
    std::vector<int> pull_counts;
    RewardHistory history;
    std::vector<double> budget_trajectory;

    static RunState initial(int arm_count, double initial_budget) {
        if (arm_count < 1) throw UsageError("RunState: arm_count must be >= 1");
        if (!(initial_budget > 0.0)) throw UsageError("RunState: initial budget must be > 0");
        RunState state;
        state.budget = initial_budget;
        state.initial_budget = initial_budget;
        state.pull_counts.assign(static_cast<std::size_t>(arm_count), 0);
        state.history = RewardHistory(arm_count);
        return state;
    }

    int arm_count() const { return static_cast<int>(pull_counts.size()); }

    // Records the stage outcome: the pull, the observed reward, the budget
    // update and, when the clamped budget lands on zero, the ruin time.
    void apply(int arm, double reward) {
        if (ruined) throw UsageError("RunState::apply called on a ruined run");
        if (arm < 0 || arm >= arm_count()) throw UsageError("RunState::apply: arm out of range");
        pull_counts[static_cast<std::size_t>(arm)] += 1;
        history.add(arm, reward);
        budget = update_budget(budget, reward);
        budget_trajectory.push_back(budget);
        if (budget == 0.0) {
            ruined = true;
            ruin_time = stage;
        }
        stage += 1;
    }
};

}  // namespace smab
