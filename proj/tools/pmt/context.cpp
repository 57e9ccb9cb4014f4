#include "context.hpp"

#include <fstream>
#include <iostream>
#include <limits>
#include <random>

#include "pmt/error.hpp"

namespace pmt::cli {
namespace {

// True when the config source assigns master_seed (overlaying on two
// different bases tells an explicit value apart from the default).
bool assigns_seed(const std::string& text) {
    RunConfig a, b;
    a.master_seed = 1;
    b.master_seed = 2;
    return parse_config(text, a).master_seed == parse_config(text, b).master_seed;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

Context make_context(const GlobalOptions& options, bool needs_seed, std::string command_line) {
    Context ctx;
    ctx.command_line = std::move(command_line);
    ctx.out_dir = options.out_dir;
    ctx.schema = PoolSchema::for_kind(parse_metric_kind(options.metric_kind));

    bool seed_given = false;
    if (!options.config_path.empty()) {
        const auto text = read_file(options.config_path);
        ctx.config = parse_config(text, ctx.config);
        seed_given = assigns_seed(text);
    }
    for (const auto& kv : options.overrides) {
        ctx.config = parse_config(kv, ctx.config);
        seed_given = seed_given || assigns_seed(kv);
    }
    if (options.seed) {
        ctx.config.master_seed = *options.seed;
        seed_given = true;
    }
    if (needs_seed && !seed_given) {
        if (options.strict) throw UsageError("--strict: no seed given (use --seed or master_seed)");
        std::random_device device;
        ctx.config.master_seed = (static_cast<std::uint64_t>(device()) << 32) ^ device();
        std::cerr << "pmt: no seed given, using --seed " << ctx.config.master_seed << '\n';
    }
    ctx.config.validate();
    return ctx;
}

std::vector<std::string> Context::header() const {
    return {"pmt " + command_line, "config " + to_json(config).dump()};
}

nlohmann::json Context::metadata() const {
    return {{"command", command_line}, {"tool", "pmt"}};
}

InstancePool Context::load(const std::string& path) const {
    return load_pool(path, schema);
}

std::vector<InstancePool> Context::load_all(const std::vector<std::string>& paths) const {
    std::vector<InstancePool> pools;
    pools.reserve(paths.size());
    for (const auto& p : paths) pools.push_back(load(p));
    return pools;
}

std::filesystem::path Context::output(const std::string& name) const {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw DataError("cannot create output directory '" + out_dir.string() + "'");
    return out_dir / name;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw DataError("cannot write '" + path.string() + "'");
        out << content;
        if (!out) throw DataError("failed writing '" + path.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace pmt::cli
