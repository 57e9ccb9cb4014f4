#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pmt/hellinger.hpp"
#include "pmt/pipeline.hpp"
#include "pmt/posterior.hpp"

namespace pmt {

std::string sha256_hex(std::string_view bytes);

/// Finite numbers as JSON numbers; infinities as the strings "inf" / "-inf".
nlohmann::json json_number(double value);

nlohmann::json to_json(const MutationTest& test);
nlohmann::json to_json(const CredibleInterval& ci);
nlohmann::json to_json(const EffectReport& effect);

/// Components, trial counts, provenance and point / interval estimates.
nlohmann::json posterior_summary(const BaggedPosterior& posterior, double map, double mmse,
                                 const CredibleInterval& ci);

/// Rebuilds the mixture from a posterior_summary document.
BetaMixture mixture_from_summary(const nlohmann::json& summary);

/// Reproducible payload of a decide run: config, fingerprints, per-mutation
/// results and the mutation score. Contains no timing information.
nlohmann::json to_json(const RunReport& report);

nlohmann::json to_json(const FlakinessTable& table);

/// Wraps a payload as {"payload", "payload_sha256", "metadata"}; the hash
/// covers the compact dump of the payload only.
nlohmann::json envelope(const nlohmann::json& payload, const nlohmann::json& metadata);

/// `x,density[,q_not_killed,q_killed]` on a uniform grid over [0, 1], after
/// "# "-prefixed header lines.
void write_density_csv(std::ostream& out, const BetaMixture& posterior, std::size_t grid,
                       const IdealPosteriors* ideals = nullptr,
                       std::span<const std::string> header = {});

}  // namespace pmt
