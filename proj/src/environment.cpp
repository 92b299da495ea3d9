#include "smab/environment.hpp"

#include <string>

#include "smab/errors.hpp"

namespace smab {

void EnvironmentSpec::validate() const {
    if (arm_count < 1)
        throw ConfigError("environment.arms must be >= 1, got " + std::to_string(arm_count));
    if (!(mean_low <= mean_high))
        throw ConfigError("environment.mean_low must be <= environment.mean_high");
    if (!(sigma_shape > 0.0))
        throw ConfigError("environment.sigma_shape must be > 0");
    if (!(sigma_rate > 0.0))
        throw ConfigError("environment.sigma_rate must be > 0");
}

Environment sample_environment(const EnvironmentSpec& spec, RngEngine& rng) {
    spec.validate();
    std::uniform_real_distribution<double> mean_dist(spec.mean_low, spec.mean_high);
    // std::gamma_distribution takes (shape, scale); scale = 1/rate.
    std::gamma_distribution<double> sigma_dist(spec.sigma_shape, 1.0 / spec.sigma_rate);

    Environment env;
    env.arms.reserve(static_cast<std::size_t>(spec.arm_count));
    for (int k = 0; k < spec.arm_count; ++k) {
        ArmSpec arm;
        arm.mean = mean_dist(rng);
        arm.std_dev = sigma_dist(rng);
        env.arms.push_back(arm);
    }
    return env;
}

double draw_reward(const Environment& env, int arm, RngEngine& rng) {
    if (arm < 0 || arm >= env.arm_count())
        throw UsageError("draw_reward: arm index " + std::to_string(arm) + " out of range");
    const ArmSpec& spec = env.arms[static_cast<std::size_t>(arm)];
    if (spec.std_dev < 0.0)
        throw UsageError("draw_reward: negative std_dev");
    // std::normal_distribution requires sigma > 0; the degenerate arm is a constant.
    if (spec.std_dev == 0.0) return spec.mean;
    std::normal_distribution<double> dist(spec.mean, spec.std_dev);
    return dist(rng);
}

}  // namespace smab
