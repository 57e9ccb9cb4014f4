#include "pmt/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <vector>

#include "pmt/error.hpp"

namespace pmt {
namespace {

constexpr int kRejectionCap = 10000;

std::string instance_name(const std::string& label, std::size_t i) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%05zu", i);
    return label + "-" + buffer;
}

}  // namespace

void PopulationSpec::validate() const {
    if (size < 1) throw ConfigError("population size must be >= 1");
    if (const auto* n = std::get_if<TruncatedNormal>(&law)) {
        if (!(n->sigma > 0.0)) throw ConfigError("truncated-normal sigma must be > 0");
        if (!(n->lo < n->hi)) throw ConfigError("truncated-normal needs lo < hi");
        if (!std::isfinite(n->mu)) throw ConfigError("truncated-normal mu must be finite");
    } else {
        const auto& b = std::get<PerInputBernoulli>(law);
        if (!(b.p >= 0.0 && b.p <= 1.0)) throw ConfigError("per-input-bernoulli p must lie in [0, 1]");
        if (b.length < 1) throw ConfigError("per-input-bernoulli length must be >= 1");
    }
}

InstancePool gen_population(const PopulationSpec& spec, Stream stream) {
    spec.validate();
    InstancePool pool;
    pool.label = spec.label;
    pool.mutation_operator = spec.mutation_operator;
    pool.magnitude = spec.magnitude;
    pool.records.reserve(spec.size);

    for (std::size_t i = 0; i < spec.size; ++i) {
        Stream rng = stream.split(i);
        InstanceRecord record;
        record.instance_id = instance_name(spec.label, i);
        record.seed = static_cast<std::int64_t>(i);
        if (const auto* law = std::get_if<TruncatedNormal>(&spec.law)) {
            int attempts = 0;
            double x;
            do {
                if (++attempts > kRejectionCap)
                    throw ConfigError("truncated-normal rejection sampling exceeded " +
                                      std::to_string(kRejectionCap) + " attempts");
                x = law->mu + law->sigma * rng.normal();
            } while (x < law->lo || x > law->hi);
            record.metric = x;
        } else {
            const auto& b = std::get<PerInputBernoulli>(spec.law);
            std::vector<std::uint8_t> outcomes(b.length);
            std::size_t hits = 0;
            for (auto& o : outcomes) {
                o = rng.uniform() < b.p ? 1 : 0;
                hits += o;
            }
            record.metric = static_cast<double>(hits) / static_cast<double>(b.length);
            record.outcomes = std::move(outcomes);
        }
        pool.records.push_back(std::move(record));
    }
    return pool;
}

KillProbEstimate brute_force_kill_prob(std::span<const double> healthy,
                                       std::span<const double> mutant, const MutationTest& test,
                                       const RunConfig& cfg, std::size_t n_mc, Stream stream) {
    if (n_mc < 10000) throw ConfigError("brute-force oracle needs n_mc >= 10000");
    const auto n1 = static_cast<std::size_t>(cfg.n1);
    const auto n2 = static_cast<std::size_t>(cfg.n2);
    test.check_sample_sizes(n1, n2);
    cfg.check_pool_sizes(healthy.size(), mutant.size());

    std::mt19937_64 engine(stream());
    std::vector<double> h_sample, m_sample;
    h_sample.reserve(n1);
    m_sample.reserve(n2);

    KillProbEstimate out;
    out.trials = n_mc;
    for (std::size_t t = 0; t < n_mc; ++t) {
        h_sample.clear();
        m_sample.clear();
        std::sample(healthy.begin(), healthy.end(), std::back_inserter(h_sample), n1, engine);
        std::sample(mutant.begin(), mutant.end(), std::back_inserter(m_sample), n2, engine);
        if (run_test(test, h_sample, m_sample).killed) ++out.kills;
    }
    const double p = static_cast<double>(out.kills) / static_cast<double>(n_mc);
    out.estimate = p;
    out.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(n_mc));
    return out;
}

}  // namespace pmt
