#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pmt/config.hpp"
#include "pmt/data.hpp"
#include "pmt/hellinger.hpp"
#include "pmt/mutation_test.hpp"
#include "pmt/posterior.hpp"
#include "pmt/rng.hpp"

namespace pmt {

/// Row count plus SHA-256 of the pool's canonical CSV form (labels and
/// comments excluded, so identical contents give identical fingerprints).
struct PoolFingerprint {
    std::string label;
    std::size_t rows = 0;
    std::string sha256;

    bool same_content(const PoolFingerprint& o) const { return rows == o.rows && sha256 == o.sha256; }
};

PoolFingerprint fingerprint(const InstancePool& pool);

/// Splits a pool 50/50 into disjoint halves by sorted instance_id: the first
/// floor(n/2) ids form the reference half, the rest the "unknown" half.
std::pair<InstancePool, InstancePool> split_identity(const InstancePool& pool);

struct MutationAnalysis {
    std::string label;
    std::string mutation_operator;
    std::optional<std::string> magnitude;
    /// "pools", or "disjoint-half-identity" when the mutant pool has the same
    /// content as the healthy pool.
    std::string protocol;
    PoolFingerprint mutant;
    BaggedPosterior posterior;
    double mmse = 0.0;
    double map = 0.0;
    CredibleInterval ci;
    EffectReport effect;
};

struct RunReport {
    RunConfig config;
    MutationTest test;
    PoolFingerprint healthy;
    std::vector<MutationAnalysis> mutations;
    double mutation_score = 0.0;
    std::vector<std::string> posterior_files;  // filled in by the caller that writes them
};

struct DecideOptions {
    CiKind ci_kind = CiKind::equal_tailed;
    EffectScale scale;
};

/// Full pipeline per mutant pool: bagging, estimates, similarity ratio and
/// verdict; then the mutation score over all mutants. Mutant i uses
/// Stream(cfg.master_seed).split(i).
RunReport decide(const InstancePool& healthy, std::span<const InstancePool> mutants,
                 const MutationTest& test, const RunConfig& cfg, const DecideOptions& options = {});

struct FlakinessColumn {
    std::string label;
    double mean_kill_probability = 0.0;
    std::vector<double> per_partition;
};

struct FlakinessTable {
    std::size_t k = 0;
    std::size_t n_samplings = 0;
    std::size_t n_partitions = 0;
    std::vector<FlakinessColumn> columns;  // identity first, then mutants in input order
};

/// Repeated plain mutation testing. Each partition shuffles the healthy pool
/// into two disjoint halves; the first half is the reference and the second
/// half plays the "unknown" identity pool. For every unknown pool, k-vs-k
/// samples are tested n_samplings times and the kill fraction recorded.
/// Partition p uses stream.split(p); unknown pool u within it uses
/// .split(u + 1) and sampling s .split(s).
FlakinessTable flakiness(const InstancePool& healthy, std::span<const InstancePool> mutants,
                         const MutationTest& test, std::size_t k, std::size_t n_samplings,
                         std::size_t n_partitions, Stream stream);

}  // namespace pmt
