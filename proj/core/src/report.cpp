#include "pmt/report.hpp"

#include <cmath>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include <openssl/evp.h>

#include "pmt/data.hpp"
#include "pmt/error.hpp"

namespace pmt {

std::string sha256_hex(std::string_view bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1)
        throw NumericalError("SHA-256 digest failed");
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i)
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return hex.str();
}

nlohmann::json json_number(double value) {
    if (std::isfinite(value)) return value;
    if (std::isnan(value)) return "nan";
    return value > 0 ? "inf" : "-inf";
}

nlohmann::json to_json(const MutationTest& test) {
    return {{"kind", to_string(test.kind)},
            {"p_threshold", test.p_threshold},
            {"effect_threshold", test.effect_threshold},
            {"delta_tolerance", test.delta_tolerance}};
}

nlohmann::json to_json(const CredibleInterval& ci) {
    return {{"lo", ci.lo},
            {"hi", ci.hi},
            {"level", ci.level},
            {"kind", to_string(ci.kind)},
            {"multimodal", ci.multimodal}};
}

nlohmann::json to_json(const EffectReport& effect) {
    return {{"raw_ratio", json_number(effect.ratio)},
            {"display_ratio", effect.display_ratio()},
            {"class", to_string(effect.effect_class)},
            {"mark", effect_mark(effect.effect_class)},
            {"verdict", to_string(effect.verdict)},
            {"h_to_not_killed", effect.h_to_not_killed},
            {"h_to_killed", effect.h_to_killed},
            {"diagnostics",
             {{"moment_matched_beta",
               {{"alpha", effect.moment_matched.alpha}, {"beta", effect.moment_matched.beta}}}}}};
}

nlohmann::json posterior_summary(const BaggedPosterior& posterior, double map, double mmse,
                                 const CredibleInterval& ci) {
    nlohmann::json components = nlohmann::json::array();
    for (const auto& c : posterior.mixture.components()) components.push_back({c.alpha, c.beta});
    nlohmann::json successes = nlohmann::json::array();
    for (const auto& o : posterior.outcomes) successes.push_back(o.successes);
    return {{"master_seed", posterior.provenance.master_seed},
            {"healthy", posterior.provenance.healthy_label},
            {"mutant", posterior.provenance.mutant_label},
            {"config", to_json(posterior.provenance.config)},
            {"components", std::move(components)},
            {"successes", std::move(successes)},
            {"mean", posterior.mixture.mean()},
            {"variance", posterior.mixture.variance()},
            {"mmse", mmse},
            {"map", map},
            {"ci", to_json(ci)}};
}

BetaMixture mixture_from_summary(const nlohmann::json& summary) {
    try {
        std::vector<BetaDist> components;
        for (const auto& c : summary.at("components"))
            components.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
        return BetaMixture(std::move(components));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed posterior summary: ") + e.what());
    }
}

nlohmann::json to_json(const RunReport& report) {
    nlohmann::json mutations = nlohmann::json::array();
    for (std::size_t i = 0; i < report.mutations.size(); ++i) {
        const auto& a = report.mutations[i];
        nlohmann::json m = {
            {"label", a.label},
            {"mutation_operator", a.mutation_operator},
            {"magnitude", a.magnitude ? nlohmann::json(*a.magnitude) : nlohmann::json(nullptr)},
            {"protocol", a.protocol},
            {"pool", {{"rows", a.mutant.rows}, {"sha256", a.mutant.sha256}}},
            {"posterior", posterior_summary(a.posterior, a.map, a.mmse, a.ci)},
            {"effect", to_json(a.effect)},
        };
        if (i < report.posterior_files.size()) m["posterior_file"] = report.posterior_files[i];
        mutations.push_back(std::move(m));
    }
    return {{"config", to_json(report.config)},
            {"master_seed", report.config.master_seed},
            {"mutation_test", to_json(report.test)},
            {"healthy_pool",
             {{"label", report.healthy.label},
              {"rows", report.healthy.rows},
              {"sha256", report.healthy.sha256}}},
            {"mutations", std::move(mutations)},
            {"mutation_score", report.mutation_score},
            {"theta", report.config.theta}};
}

nlohmann::json to_json(const FlakinessTable& table) {
    nlohmann::json columns = nlohmann::json::array();
    for (const auto& c : table.columns)
        columns.push_back({{"label", c.label},
                           {"mean_kill_probability", c.mean_kill_probability},
                           {"per_partition", c.per_partition}});
    return {{"k", table.k},
            {"n_samplings", table.n_samplings},
            {"n_partitions", table.n_partitions},
            {"columns", std::move(columns)}};
}

nlohmann::json envelope(const nlohmann::json& payload, const nlohmann::json& metadata) {
    return {{"payload", payload},
            {"payload_sha256", sha256_hex(payload.dump())},
            {"metadata", metadata}};
}

void write_density_csv(std::ostream& out, const BetaMixture& posterior, std::size_t grid,
                       const IdealPosteriors* ideals, std::span<const std::string> header) {
    if (grid < 2) throw ConfigError("density grid needs at least 2 points");
    for (const auto& h : header) out << "# " << h << '\n';
    out << "x,density";
    if (ideals) out << ",q_not_killed,q_killed";
    out << '\n';
    auto cell = [](double v) { return std::isfinite(v) ? format_double(v) : std::string("inf"); };
    for (std::size_t i = 0; i < grid; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(grid - 1);
        out << format_double(x) << ',' << cell(posterior.pdf(x));
        if (ideals) out << ',' << cell(ideals->not_killed.pdf(x)) << ',' << cell(ideals->killed.pdf(x));
        out << '\n';
    }
}

}  // namespace pmt
