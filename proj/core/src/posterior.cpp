#include "pmt/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pmt/error.hpp"
#include "pmt/parallel.hpp"

namespace pmt {
namespace {

constexpr double kInvPhi = 0.6180339887498949;  // 1 / golden ratio

// Golden-section search for the maximum of f on [a, b].
template <class F>
double golden_max(F&& f, double a, double b, double tol) {
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

void draw_without_replacement(std::span<const double> pool, std::vector<std::uint32_t>& index,
                              std::span<double> out, Stream& rng) {
    std::iota(index.begin(), index.end(), 0u);
    const std::size_t n = index.size();
    for (std::size_t j = 0; j < out.size(); ++j) {
        const auto pick = j + rng.below(n - j);
        std::swap(index[j], index[pick]);
        out[j] = pool[index[j]];
    }
}

}  // namespace

TrialOutcome run_trials(std::span<const double> healthy, std::span<const double> mutant,
                        const MutationTest& test, const RunConfig& cfg, Stream stream) {
    cfg.validate();
    test.validate();
    test.check_sample_sizes(static_cast<std::size_t>(cfg.n1), static_cast<std::size_t>(cfg.n2));
    cfg.check_pool_sizes(healthy.size(), mutant.size());

    std::vector<std::uint32_t> healthy_index(healthy.size()), mutant_index(mutant.size());
    std::vector<double> healthy_sample(static_cast<std::size_t>(cfg.n1));
    std::vector<double> mutant_sample(static_cast<std::size_t>(cfg.n2));

    TrialOutcome outcome{0, cfg.trials};
    for (int i = 0; i < cfg.trials; ++i) {
        Stream trial = stream.split(static_cast<std::uint64_t>(i));
        draw_without_replacement(healthy, healthy_index, healthy_sample, trial);
        draw_without_replacement(mutant, mutant_index, mutant_sample, trial);
        if (kills(test, healthy_sample, mutant_sample)) ++outcome.successes;
    }
    return outcome;
}

TrialOutcome run_trials(const InstancePool& healthy, const InstancePool& mutant,
                        const MutationTest& test, const RunConfig& cfg, Stream stream) {
    return run_trials(healthy.metrics(), mutant.metrics(), test, cfg, stream);
}

BetaDist beta_posterior(TrialOutcome outcome, double prior_a, double prior_b) {
    if (outcome.trials < 0 || outcome.successes < 0 || outcome.successes > outcome.trials)
        throw ConfigError("trial outcome needs 0 <= k <= N");
    return BetaDist(prior_a + outcome.successes, outcome.trials - outcome.successes + prior_b);
}

BaggedPosterior bayes_bag(std::span<const double> healthy, std::span<const double> mutant,
                          const MutationTest& test, const RunConfig& cfg, Stream stream) {
    cfg.validate();
    test.validate();
    test.check_sample_sizes(static_cast<std::size_t>(cfg.n1), static_cast<std::size_t>(cfg.n2));
    cfg.check_pool_sizes(healthy.size(), mutant.size());

    const auto bootstraps = static_cast<std::size_t>(cfg.bootstraps);
    std::vector<TrialOutcome> outcomes(bootstraps);
    parallel_for(bootstraps, [&](std::size_t b) {
        const Stream task = stream.split(b);
        Stream resampler = task.split(0);
        std::vector<double> healthy_boot(healthy.size()), mutant_boot(mutant.size());
        for (auto& v : healthy_boot) v = healthy[resampler.below(healthy.size())];
        for (auto& v : mutant_boot) v = mutant[resampler.below(mutant.size())];
        outcomes[b] = run_trials(healthy_boot, mutant_boot, test, cfg, task.split(1));
    });

    std::vector<BetaDist> components;
    components.reserve(bootstraps);
    for (const auto& o : outcomes) components.push_back(beta_posterior(o, cfg.prior_a, cfg.prior_b));

    BaggedPosterior result{BetaMixture(std::move(components)), std::move(outcomes), {}};
    result.provenance.master_seed = cfg.master_seed;
    result.provenance.config = cfg;
    return result;
}

BaggedPosterior bayes_bag(const InstancePool& healthy, const InstancePool& mutant,
                          const MutationTest& test, const RunConfig& cfg, Stream stream) {
    auto result = bayes_bag(healthy.metrics(), mutant.metrics(), test, cfg, stream);
    result.provenance.healthy_label = healthy.label;
    result.provenance.mutant_label = mutant.label;
    return result;
}

double mmse(const BetaMixture& posterior) { return posterior.mean(); }

double map_estimate(const BetaMixture& posterior) {
    constexpr std::size_t kCells = 10000;  // 1e-4 resolution
    const double guard = posterior.min_parameter() < 1.0 ? 1e-10 : 0.0;
    auto at = [&](std::size_t i) {
        return std::clamp(static_cast<double>(i) / kCells, guard, 1.0 - guard);
    };

    std::size_t best = 0;
    double best_density = posterior.pdf(at(0));
    for (std::size_t i = 1; i <= kCells; ++i) {
        const double f = posterior.pdf(at(i));
        if (f > best_density) {
            best_density = f;
            best = i;
        }
    }

    const double a = at(best == 0 ? 0 : best - 1);
    const double b = at(std::min(best + 1, kCells));
    const double refined = golden_max([&](double x) { return posterior.pdf(x); }, a, b, 1e-8);
    return posterior.pdf(refined) > best_density ? refined : at(best);
}

std::string_view to_string(CiKind kind) noexcept {
    switch (kind) {
        case CiKind::equal_tailed: return "equal-tailed";
        case CiKind::hdi: return "hdi";
        case CiKind::mean_centered: return "mean-centered";
    }
    return "equal-tailed";
}

CiKind parse_ci_kind(std::string_view text) {
    if (text == "equal-tailed") return CiKind::equal_tailed;
    if (text == "hdi") return CiKind::hdi;
    if (text == "mean-centered") return CiKind::mean_centered;
    throw ConfigError("unknown credible interval kind '" + std::string(text) + "'");
}

std::size_t count_modes(const BetaMixture& posterior, std::size_t grid) {
    const double guard = posterior.min_parameter() < 1.0 ? 1e-10 : 0.0;
    std::vector<double> f(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        const double x = std::clamp(static_cast<double>(i) / static_cast<double>(grid - 1), guard,
                                    1.0 - guard);
        f[i] = posterior.pdf(x);
    }
    std::size_t modes = 0;
    for (std::size_t i = 0; i < grid; ++i) {
        const bool above_left = i == 0 || f[i] > f[i - 1];
        const bool above_right = i + 1 == grid || f[i] > f[i + 1];
        if (above_left && above_right && grid > 1) ++modes;
    }
    return modes;
}

CredibleInterval credible_interval(const BetaMixture& posterior, double level, CiKind kind) {
    if (!(level > 0.0 && level < 1.0)) throw ConfigError("credible level must lie in (0, 1)");
    CredibleInterval ci;
    ci.level = level;
    ci.kind = kind;

    switch (kind) {
        case CiKind::equal_tailed: {
            const double tail = 0.5 * (1.0 - level);
            ci.lo = posterior.quantile(tail);
            ci.hi = posterior.quantile(1.0 - tail);
            break;
        }
        case CiKind::hdi: {
            // Width of the interval holding `level` mass that starts at lower
            // tail mass p.
            const double span = 1.0 - level;
            auto width = [&](double p) {
                return posterior.quantile(std::min(1.0, p + level)) - posterior.quantile(p);
            };
            constexpr int kSweep = 64;
            int best = 0;
            double best_width = width(0.0);
            for (int i = 1; i <= kSweep; ++i) {
                const double w = width(span * i / kSweep);
                if (w < best_width) {
                    best_width = w;
                    best = i;
                }
            }
            const double a = span * std::max(0, best - 1) / kSweep;
            const double b = span * std::min(kSweep, best + 1) / kSweep;
            double p = golden_max([&](double q) { return -width(q); }, a, b, 1e-10);
            if (width(p) > best_width) p = span * best / kSweep;
            ci.lo = posterior.quantile(p);
            ci.hi = posterior.quantile(std::min(1.0, p + level));
            ci.multimodal = count_modes(posterior) > 1;
            break;
        }
        case CiKind::mean_centered: {
            const double m = posterior.mean();
            auto mass = [&](double delta) {
                return posterior.cdf(std::min(1.0, m + delta)) - posterior.cdf(std::max(0.0, m - delta));
            };
            double lo = 0.0, hi = std::max(m, 1.0 - m);
            for (int iter = 0; iter < 100 && hi - lo > 1e-14; ++iter) {
                const double mid = 0.5 * (lo + hi);
                (mass(mid) >= level ? hi : lo) = mid;
            }
            ci.lo = std::max(0.0, m - hi);
            ci.hi = std::min(1.0, m + hi);
            break;
        }
    }
    return ci;
}

}  // namespace pmt
