#include "pmt/pipeline.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pmt/error.hpp"
#include "pmt/parallel.hpp"
#include "pmt/report.hpp"

namespace pmt {
namespace {

void draw(std::span<const double> pool, std::size_t k, std::vector<std::uint32_t>& index,
          std::vector<double>& out, Stream& rng) {
    std::iota(index.begin(), index.end(), 0u);
    out.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        std::swap(index[j], index[j + rng.below(index.size() - j)]);
        out[j] = pool[index[j]];
    }
}

}  // namespace

PoolFingerprint fingerprint(const InstancePool& pool) {
    std::ostringstream canonical;
    write_pool(canonical, pool);
    return {pool.label, pool.size(), sha256_hex(canonical.str())};
}

std::pair<InstancePool, InstancePool> split_identity(const InstancePool& pool) {
    if (pool.size() < 2) throw DataError("identity split needs at least 2 instances");
    std::vector<const InstanceRecord*> sorted;
    for (const auto& r : pool.records) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(),
              [](auto* a, auto* b) { return a->instance_id < b->instance_id; });

    InstancePool reference = pool, unknown = pool;
    reference.records.clear();
    unknown.records.clear();
    reference.label = pool.label + "[ref]";
    unknown.label = pool.label + "[unknown]";
    const std::size_t half = sorted.size() / 2;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        (i < half ? reference : unknown).records.push_back(*sorted[i]);
    return {std::move(reference), std::move(unknown)};
}

RunReport decide(const InstancePool& healthy, std::span<const InstancePool> mutants,
                 const MutationTest& test, const RunConfig& cfg, const DecideOptions& options) {
    if (mutants.empty()) throw UsageError("decide needs at least one mutant pool");
    cfg.validate();
    test.validate();

    RunReport report;
    report.config = cfg;
    report.test = test;
    report.healthy = fingerprint(healthy);
    report.mutations.resize(mutants.size());

    const Stream root(cfg.master_seed);
    const auto ideals = IdealPosteriors::from(cfg);
    const auto policy = DecisionPolicy::from(cfg);

    parallel_for(mutants.size(), [&](std::size_t i) {
        const auto& mutant = mutants[i];
        auto& a = report.mutations[i];
        a.label = mutant.label;
        a.mutation_operator = mutant.mutation_operator;
        a.magnitude = mutant.magnitude;
        const char* stage = "fingerprint";
        try {
            a.mutant = fingerprint(mutant);
            stage = "bagging";
            if (a.mutant.same_content(report.healthy)) {
                a.protocol = "disjoint-half-identity";
                const auto [reference, unknown] = split_identity(healthy);
                a.posterior = bayes_bag(reference, unknown, test, cfg, root.split(i));
            } else {
                a.protocol = "pools";
                a.posterior = bayes_bag(healthy, mutant, test, cfg, root.split(i));
            }
            stage = "estimates";
            a.mmse = mmse(a.posterior.mixture);
            a.map = map_estimate(a.posterior.mixture);
            a.ci = credible_interval(a.posterior.mixture, cfg.ci_level, options.ci_kind);
            stage = "similarity";
            a.effect = similarity_ratio(a.posterior.mixture, ideals, policy, options.scale);
        } catch (const Error& e) {
            throw Error(e.kind(), "mutant '" + mutant.label + "' [" + stage + "]: " + e.what());
        }
    });

    std::vector<EffectReport> effects;
    for (const auto& a : report.mutations) effects.push_back(a.effect);
    report.mutation_score = mutation_score(effects, cfg.theta);
    return report;
}

FlakinessTable flakiness(const InstancePool& healthy, std::span<const InstancePool> mutants,
                         const MutationTest& test, std::size_t k, std::size_t n_samplings,
                         std::size_t n_partitions, Stream stream) {
    test.validate();
    test.check_sample_sizes(k, k);
    if (n_samplings < 1 || n_partitions < 1)
        throw ConfigError("flakiness needs n_samplings >= 1 and n_partitions >= 1");
    const std::size_t half = healthy.size() / 2;
    if (k > half)
        throw ConfigError("k = " + std::to_string(k) + " exceeds half of the healthy pool (" +
                          std::to_string(half) + ")");
    for (const auto& m : mutants)
        if (k > m.size())
            throw ConfigError("k = " + std::to_string(k) + " exceeds mutant pool '" + m.label + "'");

    FlakinessTable table;
    table.k = k;
    table.n_samplings = n_samplings;
    table.n_partitions = n_partitions;
    table.columns.resize(mutants.size() + 1);
    table.columns[0].label = "identity";
    for (std::size_t u = 0; u < mutants.size(); ++u) table.columns[u + 1].label = mutants[u].label;
    for (auto& c : table.columns) c.per_partition.assign(n_partitions, 0.0);

    const auto all = healthy.metrics();
    std::vector<std::vector<double>> mutant_metrics;
    for (const auto& m : mutants) mutant_metrics.push_back(m.metrics());

    parallel_for(n_partitions, [&](std::size_t p) {
        const Stream partition = stream.split(p);
        Stream shuffler = partition.split(0);
        std::vector<double> order = all;
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[shuffler.below(i)]);
        const std::span<const double> reference(order.data(), half);
        const std::span<const double> unknown_healthy(order.data() + half, order.size() - half);

        std::vector<std::uint32_t> ref_index(reference.size()), unk_index;
        std::vector<double> ref_sample, unk_sample;
        for (std::size_t u = 0; u < table.columns.size(); ++u) {
            const std::span<const double> unknown = u == 0 ? unknown_healthy : mutant_metrics[u - 1];
            unk_index.resize(unknown.size());
            const Stream column = partition.split(u + 1);
            std::size_t killed = 0;
            for (std::size_t s = 0; s < n_samplings; ++s) {
                Stream rng = column.split(s);
                draw(reference, k, ref_index, ref_sample, rng);
                draw(unknown, k, unk_index, unk_sample, rng);
                if (kills(test, ref_sample, unk_sample)) ++killed;
            }
            table.columns[u].per_partition[p] =
                static_cast<double>(killed) / static_cast<double>(n_samplings);
        }
    });

    for (auto& c : table.columns)
        c.mean_kill_probability =
            std::accumulate(c.per_partition.begin(), c.per_partition.end(), 0.0) /
            static_cast<double>(n_partitions);
    return table;
}

}  // namespace pmt
