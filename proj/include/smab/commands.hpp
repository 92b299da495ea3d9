#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>

#include "smab/harness.hpp"

namespace smab {

// Command-line overrides. Anything set here wins over the config file;
// `smoke` first rescales to the quick preset (runs=200, paths=50,
// horizon=500) and explicit flags then win over the preset.
struct CliOverrides {
    std::optional<int> runs;
    std::optional<int> horizon;
    std::optional<int> paths;       // bootstrap paths of every ruin-averse policy
    std::optional<double> alpha;    // exploration weight of every policy
    std::optional<double> budget;   // initial budget
    std::optional<std::uint64_t> seed;
    int threads = 0;  // 0 = all available
    bool smoke = false;
};

struct OutputBundle {
    std::filesystem::path curves_csv;
    std::filesystem::path summary_csv;
    std::filesystem::path summary_text;
    std::filesystem::path metadata;
    ExperimentResult result;
};

ExperimentConfig apply_overrides(ExperimentConfig config, const CliOverrides& overrides);

// Expands every ruin-averse policy once per lambda, keeping the baselines
// single. Throws ConfigError on an empty lambda list.
ExperimentConfig expand_lambdas(ExperimentConfig config, std::span<const double> lambdas);

OutputBundle cmd_run(const std::filesystem::path& config_path,
                     const std::filesystem::path& out_dir, const CliOverrides& overrides);

OutputBundle cmd_sweep(const std::filesystem::path& config_path, std::span<const double> lambdas,
                       const std::filesystem::path& out_dir, const CliOverrides& overrides);

}  // namespace smab
