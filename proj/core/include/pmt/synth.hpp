#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>

#include "pmt/config.hpp"
#include "pmt/data.hpp"
#include "pmt/mutation_test.hpp"
#include "pmt/rng.hpp"

namespace pmt {

/// Normal(mu, sigma) restricted to [lo, hi], sampled by rejection.
struct TruncatedNormal {
    double mu = 0.0;
    double sigma = 1.0;
    double lo = 0.0;
    double hi = 1.0;
};

/// Each of `length` test inputs is answered correctly with probability p;
/// the metric is the row mean.
struct PerInputBernoulli {
    double p = 0.5;
    std::size_t length = 100;
};

struct PopulationSpec {
    std::size_t size = 1;
    std::variant<TruncatedNormal, PerInputBernoulli> law;
    std::string label = "synthetic";
    std::string mutation_operator = "identity";
    std::optional<std::string> magnitude;

    void validate() const;
};

/// Draws spec.size i.i.d. instance records; record i uses stream.split(i)
/// and is named "<label>-<i>" with seed i. Throws ConfigError when rejection
/// sampling exceeds its attempt cap.
InstancePool gen_population(const PopulationSpec& spec, Stream stream);

struct KillProbEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::size_t trials = 0;
    std::size_t kills = 0;
};

/// Plain Monte-Carlo estimate of the kill probability on the original pools:
/// n_mc trials of n1-vs-n2 draws without replacement, no bootstrap and no
/// posterior. Kept apart from run_trials (std::mt19937_64 and std::sample)
/// so the two trial loops share no code. Requires n_mc >= 10000.
KillProbEstimate brute_force_kill_prob(std::span<const double> healthy,
                                       std::span<const double> mutant, const MutationTest& test,
                                       const RunConfig& cfg, std::size_t n_mc, Stream stream);

}  // namespace pmt
