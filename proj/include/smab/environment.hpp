#pragma once

#include <cstdint>
#include <vector>

#include "smab/rng.hpp"

namespace smab {

enum class DistributionKind { normal };

// One arm's reward law. Only normal rewards are implemented; the kind field
// is the extension hook for other families.
struct ArmSpec {
    double mean = 0.0;
    double std_dev = 0.0;  // >= 0; zero means a degenerate (constant) arm
    DistributionKind kind = DistributionKind::normal;

    bool operator==(const ArmSpec&) const = default;
};

// Random-environment recipe: K arms with mean ~ Unif(mean_low, mean_high)
// and std_dev ~ Gamma(sigma_shape, sigma_rate). The gamma uses the rate
// parameterization, so Gamma(1, 10) has mean 0.1.
struct EnvironmentSpec {
    int arm_count = 8;
    double mean_low = -0.01;
    double mean_high = 0.01;
    double sigma_shape = 1.0;
    double sigma_rate = 10.0;

    void validate() const;  // throws ConfigError
    bool operator==(const EnvironmentSpec&) const = default;
};

struct Environment {
    std::vector<ArmSpec> arms;

    int arm_count() const { return static_cast<int>(arms.size()); }
};

Environment sample_environment(const EnvironmentSpec& spec, RngEngine& rng);

// One reward from the given arm. Arm indices are 0-based.
double draw_reward(const Environment& env, int arm, RngEngine& rng);

}  // namespace smab
