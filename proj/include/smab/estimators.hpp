#pragma once

#include <span>

#include "smab/rng.hpp"

namespace smab {

// Inputs of one bootstrapped action-value estimate: the arm's observed
// rewards, the live budget the resampled futures start from, how many
// stages remain, the ruin-aversion weight and the number of paths.
struct EstimatorInput {
    std::span<const double> arm_rewards;
    double current_budget = 0.0;   // > 0; estimation is undefined after ruin
    int remaining_horizon = 1;     // >= 1
    double lambda = 0.0;           // >= 0
    int path_count = 1;            // >= 1

    void validate() const;  // throws UsageError
};

// One resampled future. A path that ruins scores a fixed penalty that does
// not depend on any reward drawn at or after the ruin step, so `reward_sum`
// is meaningful only for survivors. `steps` counts the draws actually made.
struct PathOutcome {
    bool ruined = false;
    double reward_sum = 0.0;
    int steps = 0;
};

// Bootstrap estimate plus the per-call diagnostics the tests and the
// benchmark rely on. `payoff_variance` is the sample variance of the M
// per-path payoffs; `mean_path_length` measures how much early ruin
// truncation saved relative to the full horizon.
struct BootstrapEstimate {
    double value = 0.0;
    double ruin_fraction = 0.0;
    double payoff_variance = 0.0;
    double mean_path_length = 0.0;
};

// Arithmetic mean of an arm's observed rewards. Throws UsageError on an
// empty set; callers are expected to force-initialize every arm first.
double q_value(std::span<const double> arm_rewards);

// Draws up to `horizon` rewards uniformly with replacement from
// `arm_rewards`, walking the budget forward from `current_budget`. Stops at
// the first ruin; the ruined payoff ignores later draws, so truncating
// there is payoff-identical to simulating the full horizon.
PathOutcome simulate_path(std::span<const double> arm_rewards, double current_budget,
                          int horizon, RngEngine& rng);

// Average over M resampled paths of the piecewise payoff
//   ruined:   -current_budget - lambda
//   survived: sum of the horizon's drawn rewards
BootstrapEstimate bootstrap_estimate(const EstimatorInput& input, RngEngine& rng);
double bootstrap_action_value(const EstimatorInput& input, RngEngine& rng);

// Exact expectation of the same path payoff under uniform i.i.d.
// resampling: the infinite-M limit of bootstrap_action_value, computed by
// exhaustive enumeration (subtrees are pruned at ruin, where the payoff is
// constant). Enumeration is capped; instances beyond the cap throw
// UsageError. Independent of the sampling code path by construction.
double exact_action_value(std::span<const double> arm_rewards, double current_budget,
                          int horizon, double lambda);

inline constexpr long kMaxExactPaths = 1'000'000;

}  // namespace smab
