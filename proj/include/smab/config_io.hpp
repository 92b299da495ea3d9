#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "smab/harness.hpp"

namespace smab {

// Config document layout:
//
//   {
//     "environment": { "arms": 8, "mean_low": -0.01, "mean_high": 0.01,
//                      "sigma_shape": 1.0, "sigma_rate": 10.0 },
//     "experiment":  { "runs": 1000, "horizon": 500, "initial_budget": 0.5,
//                      "seed": 1, "shared_environments": true },
//     "policies":    [ { "kind": "UCB", "alpha": 10.0 },
//                      { "kind": "RuinAverse", "alpha": 10.0,
//                        "lambda": 10.0, "paths": 100 } ]
//   }
//
// Parsing errors name the offending field. config_to_json round-trips:
// parse_config(config_to_json(c)) == c.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const ExperimentConfig& config);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

// curves CSV: header `policy,lambda,stage,survival_frequency,average_budget`,
// one row per (policy, stage), stages 1..T without gaps. The lambda cell is
// empty for the kinds that do not use it.
void write_curves_csv(const std::filesystem::path& path, const ExperimentResult& result);

// summary CSV: one row per policy with the stage-T metrics, written with the
// same formatter as the curves so the horizon row matches byte for byte.
void write_summary_csv(const std::filesystem::path& path, const ExperimentResult& result);

std::string summary_table_text(const ExperimentResult& result);
void write_summary_text(const std::filesystem::path& path, const ExperimentResult& result);

void write_metadata(const std::filesystem::path& path, const ExperimentConfig& config,
                    int threads, double wall_clock_seconds);

}  // namespace smab
