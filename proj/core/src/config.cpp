#include "pmt/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "pmt/error.hpp"

namespace pmt {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// TOML-style scalars: integers, reals, booleans and quoted strings.
nlohmann::json parse_scalar(std::string_view value, const std::string& key) {
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
        return std::string(value.substr(1, value.size() - 2));
    if (value == "true") return true;
    if (value == "false") return false;
    try {
        return nlohmann::json::parse(value);
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse value '" + std::string(value) + "'");
    }
}

}  // namespace

void RunConfig::validate() const {
    if (trials < 1) throw ConfigError("N (trials) must be >= 1");
    if (bootstraps < 1) throw ConfigError("B (bootstraps) must be >= 1");
    if (n1 < 1 || n2 < 1) throw ConfigError("n1 and n2 must be >= 1");
    if (!(prior_a > 0.0) || !(prior_b > 0.0) || !std::isfinite(prior_a) || !std::isfinite(prior_b))
        throw ConfigError("prior parameters must be finite and > 0");
    if (!(ci_level > 0.0 && ci_level < 1.0)) throw ConfigError("ci_level must lie in (0, 1)");
    if (!(theta > 0.0) || !std::isfinite(theta)) throw ConfigError("theta must be finite and > 0");
    if (!(not_killed_theta > 0.0) || not_killed_theta > theta)
        throw ConfigError("not_killed_theta must lie in (0, theta]");
}

void RunConfig::check_pool_sizes(std::size_t healthy_size, std::size_t mutant_size) const {
    if (static_cast<std::size_t>(n1) > healthy_size)
        throw ConfigError("n1 = " + std::to_string(n1) + " exceeds healthy pool size " +
                          std::to_string(healthy_size));
    if (static_cast<std::size_t>(n2) > mutant_size)
        throw ConfigError("n2 = " + std::to_string(n2) + " exceeds mutant pool size " +
                          std::to_string(mutant_size));
}

nlohmann::json to_json(const RunConfig& cfg) {
    return nlohmann::json{
        {"N", cfg.trials},
        {"B", cfg.bootstraps},
        {"n1", cfg.n1},
        {"n2", cfg.n2},
        {"prior_a", cfg.prior_a},
        {"prior_b", cfg.prior_b},
        {"ci_level", cfg.ci_level},
        {"theta", cfg.theta},
        {"not_killed_theta", cfg.not_killed_theta},
        {"master_seed", cfg.master_seed},
    };
}

RunConfig config_from_json(const nlohmann::json& j, RunConfig cfg) {
    if (!j.is_object()) throw ConfigError("config must be an object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "N") cfg.trials = value.get<int>();
            else if (key == "B") cfg.bootstraps = value.get<int>();
            else if (key == "n1") cfg.n1 = value.get<int>();
            else if (key == "n2") cfg.n2 = value.get<int>();
            else if (key == "prior_a") cfg.prior_a = value.get<double>();
            else if (key == "prior_b") cfg.prior_b = value.get<double>();
            else if (key == "ci_level") cfg.ci_level = value.get<double>();
            else if (key == "theta") cfg.theta = value.get<double>();
            else if (key == "not_killed_theta") cfg.not_killed_theta = value.get<double>();
            else if (key == "master_seed") cfg.master_seed = value.get<std::uint64_t>();
            else throw ConfigError("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config type error: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

RunConfig parse_config(std::string_view text, RunConfig base) {
    const auto body = trim(text);
    if (!body.empty() && body.front() == '{') {
        try {
            return config_from_json(nlohmann::json::parse(body), base);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
    }

    nlohmann::json j = nlohmann::json::object();
    std::istringstream lines{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        auto view = trim(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos)
            view = trim(view.substr(0, hash));
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key(trim(view.substr(0, eq)));
        j[key] = parse_scalar(trim(view.substr(eq + 1)), key);
    }
    return config_from_json(j, base);
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), base);
}

}  // namespace pmt
