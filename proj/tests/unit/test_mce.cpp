#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "pmt/beta.hpp"
#include "pmt/error.hpp"
#include "pmt/mce.hpp"
#include "support/synthetic.hpp"

using namespace pmt;
namespace fx = pmt::testing;

namespace {

double sample_sd(const std::vector<double>& v) {
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

RunConfig fast_config() {
    RunConfig cfg;
    cfg.trials = 30;
    cfg.bootstraps = 8;
    cfg.n1 = cfg.n2 = 10;
    return cfg;
}

}  // namespace

TEST(Jackknife, SmallExamples) {
    const std::vector<double> two = {0.0, 1.0};
    const auto a = jackknife_error(two);
    EXPECT_NEAR(a.estimate, 0.5, 1e-15);
    EXPECT_NEAR(a.se, 0.5, 1e-15);
    EXPECT_NEAR(a.ci_lo, 0.5 - 1.959963984540054 * 0.5, 1e-12);

    const std::vector<double> three = {1.0, 2.0, 3.0};
    EXPECT_NEAR(jackknife_error(three).se, std::sqrt(1.0 / 3.0), 1e-15);
}

TEST(Jackknife, ConstantVectorHasZeroError) {
    const std::vector<double> c(25, 0.4375);
    const auto r = jackknife_error(c);
    EXPECT_EQ(r.se, 0.0);
    EXPECT_EQ(r.ci_lo, r.ci_hi);
}

TEST(Jackknife, EqualsSdOverRootR) {
    Stream rng(5);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> v(2 + rng.below(60));
        for (auto& x : v) x = rng.normal() * 3.0 + 1.0;
        EXPECT_NEAR(jackknife_error(v).se, sample_sd(v) / std::sqrt(static_cast<double>(v.size())),
                    1e-12);
    }
}

TEST(Jackknife, RejectsTooFewValues) {
    EXPECT_THROW(jackknife_error(std::vector<double>{1.0}), ConfigError);
    EXPECT_THROW(jackknife_error(std::vector<double>{1.0, 2.0}, 1.5), ConfigError);
}

TEST(ReplicateBagged, AllKillCollapse) {
    const auto h = fx::normal_pool(40, 0.99, 0.002, 1).metrics();
    const auto m = fx::normal_pool(40, 0.50, 0.002, 2).metrics();
    const auto cfg = fast_config();
    const auto reps = replicate_bagged(h, m, MutationTest{}, cfg, 4, Stream(3));
    const double a = cfg.prior_a, b = cfg.prior_b, n = cfg.trials;
    for (const auto& r : reps) {
        EXPECT_NEAR(r.mu, (n + a) / (n + a + b), 1e-15);
        EXPECT_NEAR(r.var, BetaDist(n + a, b).variance(), 1e-15);
    }
    const auto report = mce_report(reps);
    EXPECT_EQ(report.mu.se, 0.0);
    EXPECT_EQ(report.replicates, 4u);
}

TEST(ReplicateBagged, Deterministic) {
    const auto h = fx::normal_pool(40, fx::kHealthyMean, fx::kHealthySd, 4).metrics();
    const auto m = fx::shifted_pool(40, 0.6, 5, "m").metrics();
    const auto a = replicate_bagged(h, m, MutationTest{}, fast_config(), 3, Stream(6));
    const auto b = replicate_bagged(h, m, MutationTest{}, fast_config(), 3, Stream(6));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].mu, b[i].mu);
        EXPECT_EQ(a[i].var, b[i].var);
    }
    EXPECT_THROW(replicate_bagged(h, m, MutationTest{}, fast_config(), 1, Stream(6)), ConfigError);
}

TEST(Tradeoff, StructureAndCsv) {
    const auto h = fx::normal_pool(60, fx::kHealthyMean, fx::kHealthySd, 7).metrics();
    const auto m = fx::shifted_pool(60, 0.6, 8, "m").metrics();
    const std::vector<std::size_t> sizes = {20, 40, 60};
    const auto report = tradeoff_study(h, m, MutationTest{}, fast_config(), sizes, 3, 2, Stream(9));
    ASSERT_EQ(report.cells.size(), 9u);
    EXPECT_EQ(report.cells[4].sample_size, 40u);
    EXPECT_EQ(report.cells[4].pop_draw, 1u);

    for (const auto& c : report.cells) {
        EXPECT_LE(c.report.mu.ci_lo, c.report.mu.estimate);
        EXPECT_GE(c.report.mu.ci_hi, c.report.mu.estimate);
        EXPECT_LE(c.report.var.ci_lo, c.report.var.estimate);
        EXPECT_GE(c.report.var.ci_hi, c.report.var.estimate);
    }
    const auto summary = report.summarize();
    ASSERT_EQ(summary.size(), 3u);
    for (const auto& s : summary) {
        EXPECT_GE(s.dispersion_mu, 0.0);
        EXPECT_LE(s.ci_lo_mu, s.ci_hi_mu);
    }

    std::ostringstream csv;
    write_tradeoff_csv(csv, report);
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "size,pop_draw,estimate_mu,se_mu,ci_lo_mu,ci_hi_mu,estimate_var,se_var,"
                    "ci_lo_var,ci_hi_var");
    std::size_t rows = 0;
    while (std::getline(lines, line)) ++rows;
    EXPECT_EQ(rows, 9u);

    const auto again = tradeoff_study(h, m, MutationTest{}, fast_config(), sizes, 3, 2, Stream(9));
    std::ostringstream csv2;
    write_tradeoff_csv(csv2, again);
    EXPECT_EQ(csv.str(), csv2.str());
}

TEST(Tradeoff, FullSizeDrawsAreIdenticalPools) {
    const auto h = fx::normal_pool(30, fx::kHealthyMean, fx::kHealthySd, 10).metrics();
    const auto m = fx::shifted_pool(30, 0.6, 11, "m").metrics();
    const std::vector<std::size_t> sizes = {30};
    const auto report = tradeoff_study(h, m, MutationTest{}, fast_config(), sizes, 3, 2, Stream(12));
    ASSERT_EQ(report.cells.size(), 3u);
    // A full-size subsample is the pool itself in its original order.
    for (std::size_t j = 0; j < 3; ++j) {
        const auto reps = replicate_bagged(h, m, MutationTest{}, fast_config(), 2,
                                           Stream(12).split(30).split(j).split(1));
        EXPECT_EQ(report.cells[j].report.mu.estimate, mce_report(reps).mu.estimate);
    }
}

TEST(Tradeoff, RejectsBadSizes) {
    const auto h = fx::normal_pool(30, fx::kHealthyMean, fx::kHealthySd, 10).metrics();
    const auto m = fx::shifted_pool(30, 0.6, 11, "m").metrics();
    const std::vector<std::size_t> too_big = {20, 31};
    const std::vector<std::size_t> unsorted = {25, 20};
    EXPECT_THROW(tradeoff_study(h, m, MutationTest{}, fast_config(), too_big, 2, 2, Stream(1)),
                 ConfigError);
    EXPECT_THROW(tradeoff_study(h, m, MutationTest{}, fast_config(), unsorted, 2, 2, Stream(1)),
                 ConfigError);
}
