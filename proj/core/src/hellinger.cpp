#include "pmt/hellinger.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "pmt/error.hpp"
#include "pmt/quadrature.hpp"

namespace pmt {
namespace {

double distance_from_overlap_deficit(double deficit) {
    // Rounding can leave a tiny negative radicand for identical inputs.
    if (deficit < -1e-12) throw NumericalError("Hellinger radicand is negative");
    if (!(deficit > 0.0)) return 0.0;  // also maps -0.0 to +0.0
    return std::sqrt(std::min(deficit, 1.0));
}

}  // namespace

double hellinger_beta(const BetaDist& p, const BetaDist& q) {
    const double log_overlap = log_beta(0.5 * (p.alpha + q.alpha), 0.5 * (p.beta + q.beta)) -
                               0.5 * (log_beta(p.alpha, p.beta) + log_beta(q.alpha, q.beta));
    return distance_from_overlap_deficit(-std::expm1(log_overlap));
}

double hellinger_numeric(const std::function<double(double)>& p,
                         const std::function<double(double)>& q, double abs_tol) {
    const auto overlap = integrate([&](double x) { return std::sqrt(p(x) * q(x)); }, 0.0, 1.0, abs_tol);
    return distance_from_overlap_deficit(1.0 - overlap.value);
}

double hellinger(const BetaMixture& p, const BetaDist& q, double abs_tol) {
    if (p.is_single_beta()) return hellinger_beta(p.components().front(), q);
    const double log_norm = log_beta(q.alpha, q.beta);
    return hellinger_numeric([&](double x) { return p.pdf(x); },
                             [&](double x) { return std::exp(q.log_pdf(x, log_norm)); }, abs_tol);
}

IdealPosteriors IdealPosteriors::from(const RunConfig& cfg) {
    return {BetaDist(cfg.prior_a, cfg.trials + cfg.prior_b),
            BetaDist(cfg.trials + cfg.prior_a, cfg.prior_b)};
}

std::string_view to_string(EffectClass c) noexcept {
    switch (c) {
        case EffectClass::very_strong_not_killed: return "very-strong-not-killed";
        case EffectClass::strong_not_killed: return "strong-not-killed";
        case EffectClass::medium_not_killed: return "medium-not-killed";
        case EffectClass::weak_not_killed: return "weak-not-killed";
        case EffectClass::negligible: return "negligible";
        case EffectClass::weak_killed: return "weak-killed";
        case EffectClass::medium_killed: return "medium-killed";
        case EffectClass::strong_killed: return "strong-killed";
        case EffectClass::very_strong_killed: return "very-strong-killed";
    }
    return "negligible";
}

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::likely_not_killed: return "likely-not-killed";
        case Verdict::inconclusive: return "inconclusive";
        case Verdict::likely_killed: return "likely-killed";
    }
    return "inconclusive";
}

std::string_view effect_mark(EffectClass c) noexcept {
    switch (c) {
        case EffectClass::negligible: return "o";
        case EffectClass::weak_not_killed:
        case EffectClass::weak_killed: return "-";
        case EffectClass::medium_not_killed:
        case EffectClass::medium_killed: return "+-";
        case EffectClass::strong_not_killed:
        case EffectClass::strong_killed: return "+";
        case EffectClass::very_strong_not_killed:
        case EffectClass::very_strong_killed: return "++";
    }
    return "o";
}

EffectClass classify_effect(double ratio, const EffectScale& scale) {
    if (ratio < scale.below[0]) return EffectClass::very_strong_not_killed;
    if (ratio < scale.below[1]) return EffectClass::strong_not_killed;
    if (ratio < scale.below[2]) return EffectClass::medium_not_killed;
    if (ratio < scale.below[3]) return EffectClass::weak_not_killed;
    if (ratio <= scale.above[0]) return EffectClass::negligible;
    if (ratio <= scale.above[1]) return EffectClass::weak_killed;
    if (ratio <= scale.above[2]) return EffectClass::medium_killed;
    if (ratio <= scale.above[3]) return EffectClass::strong_killed;
    return EffectClass::very_strong_killed;
}

Verdict decide_verdict(double ratio, const DecisionPolicy& policy) {
    if (ratio > policy.kill) return Verdict::likely_killed;
    if (ratio < policy.not_kill) return Verdict::likely_not_killed;
    return Verdict::inconclusive;
}

std::string EffectReport::display_ratio() const {
    if (ratio > 2.0) return ">2";
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.2f", ratio);
    return buffer;
}

EffectReport similarity_ratio(const BetaMixture& posterior, const IdealPosteriors& ideals,
                              const DecisionPolicy& policy, const EffectScale& scale) {
    EffectReport report;
    report.h_to_not_killed = hellinger(posterior, ideals.not_killed);
    report.h_to_killed = hellinger(posterior, ideals.killed);
    report.ratio = report.h_to_killed > 0.0 ? report.h_to_not_killed / report.h_to_killed
                                            : std::numeric_limits<double>::infinity();
    report.effect_class = classify_effect(report.ratio, scale);
    report.verdict = decide_verdict(report.ratio, policy);
    if (!posterior.is_single_beta() && posterior.variance() > 0.0)
        report.moment_matched = moment_matched(posterior);
    else
        report.moment_matched = posterior.components().front();
    return report;
}

double mutation_score(std::span<const double> ratios, double theta) {
    if (ratios.empty()) throw ConfigError("mutation score needs at least one mutation");
    if (!(theta > 0.0)) throw ConfigError("theta must be > 0");
    std::size_t killed = 0;
    for (double r : ratios)
        if (r > theta) ++killed;
    return static_cast<double>(killed) / static_cast<double>(ratios.size());
}

double mutation_score(std::span<const EffectReport> reports, double theta) {
    std::vector<double> ratios;
    ratios.reserve(reports.size());
    for (const auto& r : reports) ratios.push_back(r.ratio);
    return mutation_score(ratios, theta);
}

}  // namespace pmt
