#include <benchmark/benchmark.h>

#include "pmt/hellinger.hpp"
#include "pmt/posterior.hpp"
#include "support/synthetic.hpp"

using namespace pmt;
namespace fx = pmt::testing;

namespace {

const InstancePool& healthy() {
    static const auto pool = fx::normal_pool(200, fx::kHealthyMean, fx::kHealthySd, 1, "healthy");
    return pool;
}

const InstancePool& mutant() {
    static const auto pool = fx::shifted_pool(200, 0.7, 2, "mutant");
    return pool;
}

void BM_RunTrials(benchmark::State& state) {
    RunConfig cfg;
    cfg.trials = static_cast<int>(state.range(0));
    const auto h = healthy().metrics(), m = mutant().metrics();
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trials(h, m, MutationTest{}, cfg, Stream(++seed)));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunTrials)->Arg(100)->Arg(1000);

void BM_BayesBag(benchmark::State& state) {
    RunConfig cfg;
    cfg.bootstraps = static_cast<int>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(bayes_bag(healthy(), mutant(), MutationTest{}, cfg, Stream(++seed)));
}
BENCHMARK(BM_BayesBag)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_HellingerClosed(benchmark::State& state) {
    const BetaDist p(46, 56), q(101, 1);
    for (auto _ : state) benchmark::DoNotOptimize(hellinger_beta(p, q));
}
BENCHMARK(BM_HellingerClosed);

void BM_HellingerNumeric(benchmark::State& state) {
    const BetaDist p(46, 56), q(101, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(hellinger_numeric([&](double x) { return p.pdf(x); },
                                                   [&](double x) { return q.pdf(x); }));
}
BENCHMARK(BM_HellingerNumeric)->Unit(benchmark::kMicrosecond);

void BM_SimilarityRatioMixture(benchmark::State& state) {
    RunConfig cfg;
    const auto bagged = bayes_bag(healthy(), mutant(), MutationTest{}, cfg, Stream(3));
    const auto ideals = IdealPosteriors::from(cfg);
    for (auto _ : state) benchmark::DoNotOptimize(similarity_ratio(bagged.mixture, ideals));
}
BENCHMARK(BM_SimilarityRatioMixture)->Unit(benchmark::kMillisecond);

void BM_CredibleIntervalHdi(benchmark::State& state) {
    RunConfig cfg;
    const auto bagged = bayes_bag(healthy(), mutant(), MutationTest{}, cfg, Stream(4));
    for (auto _ : state)
        benchmark::DoNotOptimize(credible_interval(bagged.mixture, 0.95, CiKind::hdi));
}
BENCHMARK(BM_CredibleIntervalHdi)->Unit(benchmark::kMillisecond);

}  // namespace

// The packaged benchmark_main archive carries LTO objects from another compiler.
BENCHMARK_MAIN();
