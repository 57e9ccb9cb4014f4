#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pmt/beta.hpp"
#include "pmt/config.hpp"
#include "pmt/data.hpp"
#include "pmt/mutation_test.hpp"
#include "pmt/rng.hpp"

namespace pmt {

/// k successes ("mutant" verdicts) out of N mutation tests.
struct TrialOutcome {
    int successes = 0;
    int trials = 0;

    bool operator==(const TrialOutcome&) const = default;
};

/// Runs cfg.trials independent mutation tests. Trial i uses stream.split(i)
/// to draw n1 healthy and n2 mutant metrics uniformly without replacement.
/// Throws ConfigError before any trial when a pool is smaller than n1 / n2.
TrialOutcome run_trials(std::span<const double> healthy, std::span<const double> mutant,
                        const MutationTest& test, const RunConfig& cfg, Stream stream);
TrialOutcome run_trials(const InstancePool& healthy, const InstancePool& mutant,
                        const MutationTest& test, const RunConfig& cfg, Stream stream);

/// Conjugate update: Beta(a + k, N - k + b).
BetaDist beta_posterior(TrialOutcome outcome, double prior_a, double prior_b);

struct Provenance {
    std::uint64_t master_seed = 0;
    std::string healthy_label;
    std::string mutant_label;
    RunConfig config;
};

/// Bayes-bagged posterior over the kill probability.
struct BaggedPosterior {
    BetaMixture mixture;
    std::vector<TrialOutcome> outcomes;  // one per bootstrap, in index order
    Provenance provenance;
};

/// For b in [0, B): bootstrap both pools (same size, with replacement) from
/// stream.split(b).split(0), run the trials on the resamples with
/// stream.split(b).split(1), and keep the conjugate posterior.
BaggedPosterior bayes_bag(std::span<const double> healthy, std::span<const double> mutant,
                          const MutationTest& test, const RunConfig& cfg, Stream stream);
BaggedPosterior bayes_bag(const InstancePool& healthy, const InstancePool& mutant,
                          const MutationTest& test, const RunConfig& cfg, Stream stream);

/// Posterior mean.
double mmse(const BetaMixture& posterior);

/// Mixture mode: 1e-4 grid scan refined by golden-section search to 1e-8.
/// On a plateau the leftmost maximizer wins. Components with a parameter below
/// 1 have unbounded density at an endpoint; the scan then stops 1e-10 short of
/// the endpoints.
double map_estimate(const BetaMixture& posterior);

enum class CiKind { equal_tailed, hdi, mean_centered };

std::string_view to_string(CiKind kind) noexcept;
CiKind parse_ci_kind(std::string_view text);

struct CredibleInterval {
    double lo = 0.0;
    double hi = 1.0;
    double level = 0.95;
    CiKind kind = CiKind::equal_tailed;
    /// HDI only: the density has more than one mode, so the reported interval
    /// is the narrowest single interval rather than a union.
    bool multimodal = false;
};

CredibleInterval credible_interval(const BetaMixture& posterior, double level, CiKind kind);

/// Number of strict local maxima of the density on a uniform grid.
std::size_t count_modes(const BetaMixture& posterior, std::size_t grid = 1001);

}  // namespace pmt
