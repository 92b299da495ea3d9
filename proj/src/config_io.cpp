#include "smab/config_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "smab/errors.hpp"
#include "smab/version.hpp"

namespace smab {

namespace {

using nlohmann::json;

const json& section(const json& doc, const char* name) {
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    const auto it = doc.find(name);
    if (it == doc.end()) throw ConfigError(std::string("config is missing section '") + name + "'");
    return *it;
}

template <typename T>
T field(const json& sec, const std::string& where, const char* name) {
    const auto it = sec.find(name);
    if (it == sec.end()) throw ConfigError("config is missing field '" + where + "." + name + "'");
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config field '" + where + "." + name + "' has the wrong type");
    }
}

template <typename T>
T field_or(const json& sec, const std::string& where, const char* name, T fallback) {
    if (sec.find(name) == sec.end()) return fallback;
    return field<T>(sec, where, name);
}

PolicyConfig parse_policy(const json& doc, std::size_t index) {
    const std::string where = "policies[" + std::to_string(index) + "]";
    if (!doc.is_object()) throw ConfigError("config field '" + where + "' must be an object");

    PolicyConfig policy;
    policy.kind = policy_kind_from_name(field<std::string>(doc, where, "kind"));
    policy.alpha = field<double>(doc, where, "alpha");
    if (uses_bootstrap(policy.kind)) {
        policy.lambda = field<double>(doc, where, "lambda");
        policy.path_count = field<int>(doc, where, "paths");
    } else {
        policy.lambda = 0.0;
        policy.path_count = field_or<int>(doc, where, "paths", 100);
    }
    return policy;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

std::string lambda_cell(const PolicyConfig& policy) {
    return uses_bootstrap(policy.kind) ? format_double(policy.lambda) : std::string{};
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
    ExperimentConfig config;

    const json& env = section(doc, "environment");
    config.env_spec.arm_count = field<int>(env, "environment", "arms");
    config.env_spec.mean_low = field<double>(env, "environment", "mean_low");
    config.env_spec.mean_high = field<double>(env, "environment", "mean_high");
    config.env_spec.sigma_shape = field<double>(env, "environment", "sigma_shape");
    config.env_spec.sigma_rate = field<double>(env, "environment", "sigma_rate");

    const json& exp = section(doc, "experiment");
    config.runs = field<int>(exp, "experiment", "runs");
    config.horizon = field<int>(exp, "experiment", "horizon");
    config.initial_budget = field<double>(exp, "experiment", "initial_budget");
    config.master_seed = field<std::uint64_t>(exp, "experiment", "seed");
    config.shared_environments =
        field_or<bool>(exp, "experiment", "shared_environments", true);

    const json& policies = section(doc, "policies");
    if (!policies.is_array() || policies.empty())
        throw ConfigError("config field 'policies' must be a nonempty array");
    for (std::size_t i = 0; i < policies.size(); ++i)
        config.policies.push_back(parse_policy(policies[i], i));

    config.validate();
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
    json policies = json::array();
    for (const PolicyConfig& policy : config.policies) {
        json entry{{"kind", policy_kind_name(policy.kind)}, {"alpha", policy.alpha}};
        if (uses_bootstrap(policy.kind)) {
            entry["lambda"] = policy.lambda;
            entry["paths"] = policy.path_count;
        }
        policies.push_back(std::move(entry));
    }
    return json{{"environment",
                 {{"arms", config.env_spec.arm_count},
                  {"mean_low", config.env_spec.mean_low},
                  {"mean_high", config.env_spec.mean_high},
                  {"sigma_shape", config.env_spec.sigma_shape},
                  {"sigma_rate", config.env_spec.sigma_rate}}},
                {"experiment",
                 {{"runs", config.runs},
                  {"horizon", config.horizon},
                  {"initial_budget", config.initial_budget},
                  {"seed", config.master_seed},
                  {"shared_environments", config.shared_environments}}},
                {"policies", std::move(policies)}};
}

std::string format_double(double value) {
    std::array<char, 32> buffer{};
    const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    if (ec != std::errc{}) throw UsageError("format_double failed");
    return std::string(buffer.data(), end);
}

void write_curves_csv(const std::filesystem::path& path, const ExperimentResult& result) {
    std::ofstream out = open_output(path);
    out << "policy,lambda,stage,survival_frequency,average_budget\n";
    for (const PolicyCurves& curves : result.policies) {
        const std::string name = policy_kind_name(curves.policy.kind);
        const std::string lambda = lambda_cell(curves.policy);
        for (std::size_t t = 0; t < curves.survival.size(); ++t) {
            out << name << ',' << lambda << ',' << (t + 1) << ','
                << format_double(curves.survival[t]) << ','
                << format_double(curves.average_budget[t]) << '\n';
        }
    }
    finish_output(out, path);
}

void write_summary_csv(const std::filesystem::path& path, const ExperimentResult& result) {
    std::ofstream out = open_output(path);
    out << "policy,lambda,survival_frequency,average_budget\n";
    for (const PolicyCurves& curves : result.policies) {
        out << policy_kind_name(curves.policy.kind) << ',' << lambda_cell(curves.policy) << ','
            << format_double(curves.survival_at_horizon) << ','
            << format_double(curves.average_budget_at_horizon) << '\n';
    }
    finish_output(out, path);
}

std::string summary_table_text(const ExperimentResult& result) {
    std::ostringstream out;
    out << std::left << std::setw(22) << "policy" << std::right << std::setw(10) << "lambda"
        << std::setw(21) << "survival_frequency" << std::setw(17) << "average_budget" << '\n';
    for (const PolicyCurves& curves : result.policies) {
        const std::string lambda = uses_bootstrap(curves.policy.kind)
                                       ? format_double(curves.policy.lambda)
                                       : std::string("-");
        out << std::left << std::setw(22) << policy_kind_name(curves.policy.kind) << std::right
            << std::setw(10) << lambda << std::setw(21) << std::fixed << std::setprecision(4)
            << curves.survival_at_horizon << std::setw(17) << curves.average_budget_at_horizon
            << '\n';
        out.unsetf(std::ios::fixed);
    }
    return out.str();
}

void write_summary_text(const std::filesystem::path& path, const ExperimentResult& result) {
    std::ofstream out = open_output(path);
    out << summary_table_text(result);
    finish_output(out, path);
}

void write_metadata(const std::filesystem::path& path, const ExperimentConfig& config,
                    int threads, double wall_clock_seconds) {
    json doc{{"version", kVersion},
             {"master_seed", config.master_seed},
             {"threads", threads},
             {"wall_clock_seconds", wall_clock_seconds},
             {"config", config_to_json(config)}};
    std::ofstream out = open_output(path);
    out << doc.dump(2) << '\n';
    finish_output(out, path);
}

}  // namespace smab
