#include "smab/commands.hpp"

#include <chrono>
#include <system_error>

#include "smab/config_io.hpp"
#include "smab/errors.hpp"

namespace smab {

namespace {

OutputBundle execute_and_write(ExperimentConfig config, const std::filesystem::path& out_dir,
                               const CliOverrides& overrides) {
    config.validate();

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir.string() + "'");

    const auto started = std::chrono::steady_clock::now();
    ExperimentResult result = run_experiment(config, overrides.threads);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;

    OutputBundle bundle{.curves_csv = out_dir / "curves.csv",
                        .summary_csv = out_dir / "summary.csv",
                        .summary_text = out_dir / "summary.txt",
                        .metadata = out_dir / "metadata.json",
                        .result = std::move(result)};
    write_curves_csv(bundle.curves_csv, bundle.result);
    write_summary_csv(bundle.summary_csv, bundle.result);
    write_summary_text(bundle.summary_text, bundle.result);
    write_metadata(bundle.metadata, config, overrides.threads, elapsed.count());
    return bundle;
}

}  // namespace

ExperimentConfig apply_overrides(ExperimentConfig config, const CliOverrides& overrides) {
    if (overrides.smoke) {
        config.runs = 200;
        config.horizon = 500;
        for (PolicyConfig& policy : config.policies)
            if (uses_bootstrap(policy.kind)) policy.path_count = 50;
    }
    if (overrides.runs) config.runs = *overrides.runs;
    if (overrides.horizon) config.horizon = *overrides.horizon;
    if (overrides.paths)
        for (PolicyConfig& policy : config.policies)
            if (uses_bootstrap(policy.kind)) policy.path_count = *overrides.paths;
    if (overrides.alpha)
        for (PolicyConfig& policy : config.policies) policy.alpha = *overrides.alpha;
    if (overrides.budget) config.initial_budget = *overrides.budget;
    if (overrides.seed) config.master_seed = *overrides.seed;
    return config;
}

ExperimentConfig expand_lambdas(ExperimentConfig config, std::span<const double> lambdas) {
    if (lambdas.empty()) throw ConfigError("sweep: lambda list is empty");

    std::vector<PolicyConfig> expanded;
    for (const PolicyConfig& policy : config.policies) {
        if (!uses_bootstrap(policy.kind)) {
            expanded.push_back(policy);
            continue;
        }
        for (const double lambda : lambdas) {
            PolicyConfig variant = policy;
            variant.lambda = lambda;
            expanded.push_back(variant);
        }
    }
    config.policies = std::move(expanded);
    return config;
}

OutputBundle cmd_run(const std::filesystem::path& config_path,
                     const std::filesystem::path& out_dir, const CliOverrides& overrides) {
    const ExperimentConfig config = apply_overrides(load_config(config_path), overrides);
    return execute_and_write(config, out_dir, overrides);
}

OutputBundle cmd_sweep(const std::filesystem::path& config_path, std::span<const double> lambdas,
                       const std::filesystem::path& out_dir, const CliOverrides& overrides) {
    const ExperimentConfig config =
        expand_lambdas(apply_overrides(load_config(config_path), overrides), lambdas);
    return execute_and_write(config, out_dir, overrides);
}

}  // namespace smab
