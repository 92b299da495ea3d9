#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "smab/errors.hpp"
#include "smab/estimators.hpp"
#include "smab/run_state.hpp"

using namespace smab;

namespace {

// Test-local reference: draws the full horizon unconditionally, then applies
// the piecewise payoff. simulate_path must be payoff-identical while
// stopping at ruin.
double full_draw_payoff(std::span<const double> rewards, double start_budget, int horizon,
                        double lambda, RngEngine& rng) {
    double budget = start_budget;
    double sum = 0.0;
    bool ruined = false;
    for (int s = 0; s < horizon; ++s) {
        const double r = rewards[uniform_index(rng, rewards.size())];
        sum += r;
        budget = update_budget(budget, r);
        if (budget == 0.0) ruined = true;
    }
    return ruined ? -start_budget - lambda : sum;
}

struct SmallInstance {
    std::vector<double> rewards;
    double budget;
    int horizon;
    double lambda;
};

SmallInstance random_small_instance(RngEngine& rng) {
    std::uniform_real_distribution<double> reward_dist(-1.0, 1.0);
    std::uniform_real_distribution<double> budget_dist(0.05, 2.0);
    const double lambdas[] = {0.0, 1.0, 10.0};
    SmallInstance inst;
    const std::size_t size = 1 + uniform_index(rng, 3);
    for (std::size_t i = 0; i < size; ++i) inst.rewards.push_back(reward_dist(rng));
    inst.budget = budget_dist(rng);
    inst.horizon = 1 + static_cast<int>(uniform_index(rng, 6));
    inst.lambda = lambdas[uniform_index(rng, 3)];
    return inst;
}

}  // namespace

TEST_CASE("q_value: point examples") {
    const std::vector<double> a{1.0, -1.0};
    const std::vector<double> b{0.5};
    const std::vector<double> c{0.1, 0.2, 0.3};
    CHECK(q_value(a) == 0.0);
    CHECK(q_value(b) == 0.5);
    CHECK(q_value(c) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK_THROWS_AS(q_value({}), UsageError);
}

TEST_CASE("simulate_path: deterministic positive path") {
    const std::vector<double> rewards{0.3};
    RngEngine rng(1);
    const PathOutcome path = simulate_path(rewards, 0.5, 3, rng);
    CHECK(!path.ruined);
    CHECK(path.reward_sum == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(path.steps == 3);
}

TEST_CASE("simulate_path: certain immediate ruin") {
    const std::vector<double> rewards{-0.6};
    RngEngine rng(2);
    const PathOutcome path = simulate_path(rewards, 0.5, 5, rng);
    CHECK(path.ruined);
    CHECK(path.steps == 1);
}

TEST_CASE("simulate_path: ruin frequency matches enumeration") {
    // {+1, -1} from budget 0.5: exactly the paths whose first draw is -1
    // ruin, so the ruin probability is 1/2.
    const std::vector<double> rewards{1.0, -1.0};
    RngEngine rng(3);
    int ruined = 0;
    const int paths = 100'000;
    for (int i = 0; i < paths; ++i)
        if (simulate_path(rewards, 0.5, 2, rng).ruined) ++ruined;
    CHECK(static_cast<double>(ruined) / paths == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("simulate_path: truncating at ruin is payoff-identical to full draws") {
    RngEngine meta(4);
    for (int rep = 0; rep < 2000; ++rep) {
        const SmallInstance inst = random_small_instance(meta);
        const std::uint64_t seed = meta();
        RngEngine rng_a(seed);
        RngEngine rng_b(seed);
        const PathOutcome path = simulate_path(inst.rewards, inst.budget, inst.horizon, rng_a);
        const double truncated =
            path.ruined ? -inst.budget - inst.lambda : path.reward_sum;
        const double full =
            full_draw_payoff(inst.rewards, inst.budget, inst.horizon, inst.lambda, rng_b);
        CHECK(truncated == full);
    }
}

TEST_CASE("bootstrap_action_value: no ruin possible, lambda irrelevant") {
    const std::vector<double> rewards{0.3};
    const EstimatorInput high{.arm_rewards = rewards,
                              .current_budget = 0.5,
                              .remaining_horizon = 3,
                              .lambda = 100.0,
                              .path_count = 37};
    EstimatorInput zero = high;
    zero.lambda = 0.0;
    RngEngine rng_a(5), rng_b(5);
    const double value_high = bootstrap_action_value(high, rng_a);
    const double value_zero = bootstrap_action_value(zero, rng_b);
    CHECK(value_high == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(value_high == value_zero);  // identical paths, no ruined path: bitwise equal
}

TEST_CASE("bootstrap_action_value: certain ruin gives the closed-form penalty") {
    const std::vector<double> rewards{-0.6};
    const EstimatorInput input{.arm_rewards = rewards,
                               .current_budget = 0.5,
                               .remaining_horizon = 4,
                               .lambda = 2.0,
                               .path_count = 311};
    RngEngine rng(6);
    CHECK(bootstrap_action_value(input, rng) == -2.5);
}

TEST_CASE("bootstrap_action_value: hand-enumerated two-reward instance") {
    // {+1, -1}, b=0.5, H=2, lambda=1: four equiprobable paths with payoffs
    // 2, 0, -1.5, -1.5; mean -0.25.
    const std::vector<double> rewards{1.0, -1.0};
    const EstimatorInput input{.arm_rewards = rewards,
                               .current_budget = 0.5,
                               .remaining_horizon = 2,
                               .lambda = 1.0,
                               .path_count = 100'000};
    RngEngine rng(7);
    CHECK(std::abs(bootstrap_action_value(input, rng) - (-0.25)) < 0.03);
}

TEST_CASE("exact_action_value: point examples") {
    const std::vector<double> single{0.3};
    const std::vector<double> pair{1.0, -1.0};
    CHECK(exact_action_value(single, 0.5, 3, 7.0) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(exact_action_value(pair, 0.5, 2, 1.0) == doctest::Approx(-0.25).epsilon(1e-12));
    // enumeration: payoffs 2, 0, -0.5, -0.5 at lambda=0, mean +0.25
    CHECK(exact_action_value(pair, 0.5, 2, 0.0) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("exact_action_value: enumeration cap") {
    const std::vector<double> three{0.1, 0.2, 0.3};
    const std::vector<double> single{0.1};
    CHECK_THROWS_AS(exact_action_value(three, 1.0, 13, 0.0), UsageError);  // 3^13 > 1e6
    CHECK_NOTHROW(exact_action_value(single, 1.0, 1000, 0.0));             // 1^1000 = 1
}

TEST_CASE("estimator input validation") {
    const std::vector<double> rewards{0.1};
    RngEngine rng(8);
    EstimatorInput input{.arm_rewards = rewards,
                         .current_budget = 1.0,
                         .remaining_horizon = 2,
                         .lambda = 0.0,
                         .path_count = 10};

    EstimatorInput empty = input;
    empty.arm_rewards = {};
    CHECK_THROWS_AS(bootstrap_action_value(empty, rng), UsageError);

    EstimatorInput broke = input;
    broke.current_budget = 0.0;
    CHECK_THROWS_AS(bootstrap_action_value(broke, rng), UsageError);

    EstimatorInput no_horizon = input;
    no_horizon.remaining_horizon = 0;
    CHECK_THROWS_AS(bootstrap_action_value(no_horizon, rng), UsageError);

    EstimatorInput negative_lambda = input;
    negative_lambda.lambda = -1.0;
    CHECK_THROWS_AS(bootstrap_action_value(negative_lambda, rng), UsageError);

    EstimatorInput no_paths = input;
    no_paths.path_count = 0;
    CHECK_THROWS_AS(bootstrap_action_value(no_paths, rng), UsageError);
}

TEST_CASE("bootstrap estimate stays inside the payoff bounds") {
    RngEngine meta(9);
    for (int rep = 0; rep < 300; ++rep) {
        const SmallInstance inst = random_small_instance(meta);
        const EstimatorInput input{.arm_rewards = inst.rewards,
                                   .current_budget = inst.budget,
                                   .remaining_horizon = inst.horizon,
                                   .lambda = inst.lambda,
                                   .path_count = 64};
        RngEngine rng(meta());
        const double value = bootstrap_action_value(input, rng);
        const double top =
            inst.horizon * *std::max_element(inst.rewards.begin(), inst.rewards.end());
        CHECK(value >= -inst.budget - inst.lambda - 1e-12);
        CHECK(value <= top + 1e-12);
    }
}

TEST_CASE("lambda shift identity on shared paths") {
    RngEngine meta(10);
    for (int rep = 0; rep < 200; ++rep) {
        const SmallInstance inst = random_small_instance(meta);
        const std::uint64_t seed = meta();
        const double lambda_a = 1.0, lambda_b = 100.0;

        EstimatorInput input{.arm_rewards = inst.rewards,
                             .current_budget = inst.budget,
                             .remaining_horizon = inst.horizon,
                             .lambda = lambda_a,
                             .path_count = 500};
        RngEngine rng_a(seed);
        const BootstrapEstimate est_a = bootstrap_estimate(input, rng_a);

        input.lambda = lambda_b;
        RngEngine rng_b(seed);
        const BootstrapEstimate est_b = bootstrap_estimate(input, rng_b);

        CHECK(est_a.ruin_fraction == est_b.ruin_fraction);
        const double expected = est_a.value - (lambda_b - lambda_a) * est_a.ruin_fraction;
        const double scale = std::max({1.0, std::abs(est_a.value), std::abs(est_b.value)});
        CHECK(std::abs(est_b.value - expected) <= 1e-10 * scale);
    }
}

TEST_CASE("bootstrap converges to the enumeration oracle") {
    RngEngine meta(11);
    int checked = 0;
    while (checked < 12) {
        const SmallInstance inst = random_small_instance(meta);
        const EstimatorInput input{.arm_rewards = inst.rewards,
                                   .current_budget = inst.budget,
                                   .remaining_horizon = inst.horizon,
                                   .lambda = inst.lambda,
                                   .path_count = 100'000};
        RngEngine rng(meta());
        const BootstrapEstimate est = bootstrap_estimate(input, rng);
        const double exact =
            exact_action_value(inst.rewards, inst.budget, inst.horizon, inst.lambda);
        const double standard_error = std::sqrt(est.payoff_variance / input.path_count);
        CHECK(std::abs(est.value - exact) <= 4.0 * standard_error + 1e-9);
        ++checked;
    }
}

TEST_CASE("ruin-prone instances truncate well before the horizon") {
    const std::vector<double> rewards{-0.6, 0.1};
    const EstimatorInput input{.arm_rewards = rewards,
                               .current_budget = 0.5,
                               .remaining_horizon = 200,
                               .lambda = 10.0,
                               .path_count = 20'000};
    RngEngine rng(12);
    const BootstrapEstimate est = bootstrap_estimate(input, rng);
    CHECK(est.ruin_fraction > 0.95);
    CHECK(est.mean_path_length < 50.0);
}
