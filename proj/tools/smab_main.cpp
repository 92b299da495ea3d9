#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smab/commands.hpp"
#include "smab/config_io.hpp"
#include "smab/errors.hpp"
#include "smab/version.hpp"

namespace {

void add_shared_options(CLI::App& cmd, std::string& config_path, std::string& out_dir,
                        smab::CliOverrides& overrides) {
    cmd.add_option("-c,--config", config_path, "experiment config file (JSON)")->required();
    cmd.add_option("-o,--out", out_dir, "output directory")->required();
    cmd.add_option("--runs", [&overrides](const CLI::results_t& r) {
           overrides.runs = std::stoi(r.front());
           return true;
       }, "override run count");
    cmd.add_option("--horizon", [&overrides](const CLI::results_t& r) {
           overrides.horizon = std::stoi(r.front());
           return true;
       }, "override stage horizon");
    cmd.add_option("--paths", [&overrides](const CLI::results_t& r) {
           overrides.paths = std::stoi(r.front());
           return true;
       }, "override bootstrap path count of ruin-averse policies");
    cmd.add_option("--alpha", [&overrides](const CLI::results_t& r) {
           overrides.alpha = std::stod(r.front());
           return true;
       }, "override exploration weight of every policy");
    cmd.add_option("--budget", [&overrides](const CLI::results_t& r) {
           overrides.budget = std::stod(r.front());
           return true;
       }, "override initial budget");
    cmd.add_option("--seed", [&overrides](const CLI::results_t& r) {
           overrides.seed = static_cast<std::uint64_t>(std::stoull(r.front()));
           return true;
       }, "override master seed");
    cmd.add_option("--threads", overrides.threads, "worker thread cap (0 = all cores)");
    cmd.add_flag("--smoke", overrides.smoke, "quick preset: runs=200, paths=50, horizon=500");
}

void report(const smab::OutputBundle& bundle) {
    std::cout << smab::summary_table_text(bundle.result);
    std::cout << "curves:   " << bundle.curves_csv.string() << '\n'
              << "summary:  " << bundle.summary_csv.string() << '\n'
              << "metadata: " << bundle.metadata.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"survival multi-armed bandit experiment runner"};
    app.set_version_flag("--version", std::string(smab::kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::vector<double> lambdas;
    smab::CliOverrides overrides;

    CLI::App* run = app.add_subcommand("run", "run the experiment in the config as-is");
    add_shared_options(*run, config_path, out_dir, overrides);

    CLI::App* sweep =
        app.add_subcommand("sweep", "expand ruin-averse policies across a lambda list, then run");
    add_shared_options(*sweep, config_path, out_dir, overrides);
    sweep->add_option("--lambdas", lambdas, "lambda values, comma separated")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            report(smab::cmd_run(config_path, out_dir, overrides));
        } else {
            report(smab::cmd_sweep(config_path, lambdas, out_dir, overrides));
        }
    } catch (const smab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const smab::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
