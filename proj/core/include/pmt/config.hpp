#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include <nlohmann/json.hpp>

namespace pmt {

/// Parameters of one probabilistic mutation-testing run.
struct RunConfig {
    int trials = 100;       // mutation tests per Binomial experiment
    int bootstraps = 100;   // bagging repetitions
    int n1 = 20;            // healthy instances per test
    int n2 = 20;            // mutant instances per test
    double prior_a = 1.0;
    double prior_b = 1.0;
    double ci_level = 0.95;
    double theta = 1.15;               // likely-killed / mutation-score threshold
    double not_killed_theta = 0.87;    // likely-not-killed threshold
    std::uint64_t master_seed = 0;

    /// Throws ConfigError when a field is out of range.
    void validate() const;

    /// Throws ConfigError when the pools cannot supply n1 / n2 distinct instances.
    void check_pool_sizes(std::size_t healthy_size, std::size_t mutant_size) const;

    bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& cfg);

/// Overlays fields present in `j` onto `base`. Unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});

/// Parses a JSON object or `key = value` lines (TOML-style, '#' comments).
RunConfig parse_config(std::string_view text, RunConfig base = {});

RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

}  // namespace pmt
