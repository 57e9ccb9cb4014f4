#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "pmt/config.hpp"
#include "pmt/mutation_test.hpp"
#include "pmt/rng.hpp"

namespace pmt {

struct JackknifeResult {
    double estimate = 0.0;
    double se = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::size_t replicates = 0;
};

/// Delete-1 jackknife of the mean estimator with a normal-quantile confidence
/// interval at `level`. Throws ConfigError for fewer than 2 values.
JackknifeResult jackknife_error(std::span<const double> values, double level = 0.95);

/// Mean and variance of one bagged posterior.
struct ReplicateSummary {
    double mu = 0.0;
    double var = 0.0;
};

/// Runs bayes_bag n_reps times; replicate r uses stream.split(r).
std::vector<ReplicateSummary> replicate_bagged(std::span<const double> healthy,
                                               std::span<const double> mutant,
                                               const MutationTest& test, const RunConfig& cfg,
                                               int n_reps, Stream stream);

struct MCEReport {
    JackknifeResult mu;
    JackknifeResult var;
    std::size_t replicates = 0;
};

MCEReport mce_report(std::span<const ReplicateSummary> replicates, double level = 0.95);

struct TradeoffCell {
    std::size_t sample_size = 0;
    std::size_t pop_draw = 0;
    MCEReport report;
};

/// Per sample size: averages over population draws, plus the cross-draw
/// standard deviation of estimate_mu.
struct TradeoffSummary {
    std::size_t sample_size = 0;
    double estimate_mu = 0.0;
    double ci_lo_mu = 0.0;
    double ci_hi_mu = 0.0;
    double se_mu = 0.0;
    double estimate_var = 0.0;
    double ci_lo_var = 0.0;
    double ci_hi_var = 0.0;
    double se_var = 0.0;
    double dispersion_mu = 0.0;
};

struct TradeoffReport {
    std::vector<std::size_t> sample_sizes;
    std::size_t n_pop = 0;
    std::vector<TradeoffCell> cells;  // size-major, then draw

    std::vector<TradeoffSummary> summarize() const;
};

/// For each size s and draw j, subsamples s instances from each pool without
/// replacement (original order kept) using stream.split(s).split(j).split(0),
/// then replicates with stream.split(s).split(j).split(1).
TradeoffReport tradeoff_study(std::span<const double> healthy, std::span<const double> mutant,
                              const MutationTest& test, const RunConfig& cfg,
                              std::span<const std::size_t> sizes, std::size_t n_pop, int n_reps,
                              Stream stream);

/// Tidy CSV: size,pop_draw,estimate_mu,se_mu,ci_lo_mu,ci_hi_mu,
/// estimate_var,se_var,ci_lo_var,ci_hi_var.
void write_tradeoff_csv(std::ostream& out, const TradeoffReport& report);

}  // namespace pmt
