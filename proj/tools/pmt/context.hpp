#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pmt/config.hpp"
#include "pmt/data.hpp"

namespace pmt::cli {

/// Flags shared by every subcommand.
struct GlobalOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    bool strict = false;
    std::string metric_kind = "accuracy";
    std::vector<std::string> overrides;  // key=value, applied after the config file
};

/// Resolved run context: config with seed applied, output directory, schema.
struct Context {
    RunConfig config;
    std::filesystem::path out_dir;
    PoolSchema schema;
    std::string command_line;

    /// "# "-free header lines recording the command and config snapshot.
    std::vector<std::string> header() const;
    /// Metadata block for JSON envelopes (timing is added by the caller).
    nlohmann::json metadata() const;

    InstancePool load(const std::string& path) const;
    std::vector<InstancePool> load_all(const std::vector<std::string>& paths) const;
    /// Creates the output directory and returns out_dir / name.
    std::filesystem::path output(const std::string& name) const;
};

/// `needs_seed` is false for subcommands that draw no random numbers.
Context make_context(const GlobalOptions& options, bool needs_seed, std::string command_line);

/// Writes to a temporary sibling and renames, so readers never see half a file.
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace pmt::cli
