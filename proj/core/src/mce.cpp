#include "pmt/mce.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <boost/math/distributions/normal.hpp>

#include "pmt/data.hpp"
#include "pmt/error.hpp"
#include "pmt/parallel.hpp"
#include "pmt/posterior.hpp"

namespace pmt {
namespace {

std::vector<double> subsample(std::span<const double> pool, std::size_t size, Stream& rng) {
    std::vector<std::uint32_t> index(pool.size());
    std::iota(index.begin(), index.end(), 0u);
    for (std::size_t j = 0; j < size; ++j)
        std::swap(index[j], index[j + rng.below(pool.size() - j)]);
    std::sort(index.begin(), index.begin() + static_cast<std::ptrdiff_t>(size));
    std::vector<double> out(size);
    for (std::size_t j = 0; j < size; ++j) out[j] = pool[index[j]];
    return out;
}

}  // namespace

JackknifeResult jackknife_error(std::span<const double> values, double level) {
    if (values.size() < 2) throw ConfigError("jackknife needs at least 2 values");
    if (!(level > 0.0 && level < 1.0)) throw ConfigError("confidence level must lie in (0, 1)");
    const auto r = static_cast<double>(values.size());
    const double total = std::accumulate(values.begin(), values.end(), 0.0);

    JackknifeResult out;
    out.replicates = values.size();
    out.estimate = total / r;

    std::vector<double> leave_one_out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        leave_one_out[i] = (total - values[i]) / (r - 1.0);
    // Shifted by the first replicate so identical replicates give exactly 0.
    const double shift = leave_one_out.front();
    double mean_shifted = 0.0;
    for (double v : leave_one_out) mean_shifted += (v - shift) / r;
    double ss = 0.0;
    for (double v : leave_one_out) ss += ((v - shift) - mean_shifted) * ((v - shift) - mean_shifted);
    out.se = std::sqrt((r - 1.0) / r * ss);

    const double z = boost::math::quantile(boost::math::normal(), 0.5 + 0.5 * level);
    out.ci_lo = out.estimate - z * out.se;
    out.ci_hi = out.estimate + z * out.se;
    return out;
}

std::vector<ReplicateSummary> replicate_bagged(std::span<const double> healthy,
                                               std::span<const double> mutant,
                                               const MutationTest& test, const RunConfig& cfg,
                                               int n_reps, Stream stream) {
    if (n_reps < 2) throw ConfigError("replicate_bagged needs n_reps >= 2");
    std::vector<ReplicateSummary> out(static_cast<std::size_t>(n_reps));
    parallel_for(out.size(), [&](std::size_t r) {
        const auto bagged = bayes_bag(healthy, mutant, test, cfg, stream.split(r));
        out[r] = {bagged.mixture.mean(), bagged.mixture.variance()};
    });
    return out;
}

MCEReport mce_report(std::span<const ReplicateSummary> replicates, double level) {
    std::vector<double> mu, var;
    mu.reserve(replicates.size());
    var.reserve(replicates.size());
    for (const auto& r : replicates) {
        mu.push_back(r.mu);
        var.push_back(r.var);
    }
    return {jackknife_error(mu, level), jackknife_error(var, level), replicates.size()};
}

TradeoffReport tradeoff_study(std::span<const double> healthy, std::span<const double> mutant,
                              const MutationTest& test, const RunConfig& cfg,
                              std::span<const std::size_t> sizes, std::size_t n_pop, int n_reps,
                              Stream stream) {
    if (sizes.empty()) throw ConfigError("trade-off study needs at least one sample size");
    if (n_pop < 1) throw ConfigError("n_pop must be >= 1");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1]) throw ConfigError("sample sizes must be strictly increasing");
    if (sizes.back() > std::min(healthy.size(), mutant.size()))
        throw ConfigError("largest sample size " + std::to_string(sizes.back()) +
                          " exceeds the smaller pool (" +
                          std::to_string(std::min(healthy.size(), mutant.size())) + ")");
    for (auto s : sizes) cfg.check_pool_sizes(s, s);

    TradeoffReport report;
    report.sample_sizes.assign(sizes.begin(), sizes.end());
    report.n_pop = n_pop;
    report.cells.resize(sizes.size() * n_pop);
    parallel_for(report.cells.size(), [&](std::size_t c) {
        const std::size_t size = sizes[c / n_pop];
        const std::size_t draw = c % n_pop;
        const Stream cell = stream.split(size).split(draw);
        Stream picker = cell.split(0);
        const auto h = subsample(healthy, size, picker);
        const auto m = subsample(mutant, size, picker);
        const auto reps = replicate_bagged(h, m, test, cfg, n_reps, cell.split(1));
        report.cells[c] = {size, draw, mce_report(reps, cfg.ci_level)};
    });
    return report;
}

std::vector<TradeoffSummary> TradeoffReport::summarize() const {
    std::vector<TradeoffSummary> out;
    for (std::size_t s = 0; s < sample_sizes.size(); ++s) {
        TradeoffSummary sum;
        sum.sample_size = sample_sizes[s];
        const auto n = static_cast<double>(n_pop);
        for (std::size_t j = 0; j < n_pop; ++j) {
            const auto& r = cells[s * n_pop + j].report;
            sum.estimate_mu += r.mu.estimate / n;
            sum.ci_lo_mu += r.mu.ci_lo / n;
            sum.ci_hi_mu += r.mu.ci_hi / n;
            sum.se_mu += r.mu.se / n;
            sum.estimate_var += r.var.estimate / n;
            sum.ci_lo_var += r.var.ci_lo / n;
            sum.ci_hi_var += r.var.ci_hi / n;
            sum.se_var += r.var.se / n;
        }
        if (n_pop > 1) {
            double ss = 0.0;
            for (std::size_t j = 0; j < n_pop; ++j) {
                const double d = cells[s * n_pop + j].report.mu.estimate - sum.estimate_mu;
                ss += d * d;
            }
            sum.dispersion_mu = std::sqrt(ss / (n - 1.0));
        }
        out.push_back(sum);
    }
    return out;
}

void write_tradeoff_csv(std::ostream& out, const TradeoffReport& report) {
    out << "size,pop_draw,estimate_mu,se_mu,ci_lo_mu,ci_hi_mu,estimate_var,se_var,ci_lo_var,ci_hi_var\n";
    for (const auto& c : report.cells) {
        const auto& r = c.report;
        out << c.sample_size << ',' << c.pop_draw << ',' << format_double(r.mu.estimate) << ','
            << format_double(r.mu.se) << ',' << format_double(r.mu.ci_lo) << ','
            << format_double(r.mu.ci_hi) << ',' << format_double(r.var.estimate) << ','
            << format_double(r.var.se) << ',' << format_double(r.var.ci_lo) << ','
            << format_double(r.var.ci_hi) << '\n';
    }
}

}  // namespace pmt
