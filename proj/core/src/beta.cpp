#include "pmt/beta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "pmt/error.hpp"

namespace pmt {

double log_beta(double a, double b) {
    using boost::math::lgamma;
    return lgamma(a) + lgamma(b) - lgamma(a + b);
}

BetaDist::BetaDist(double a, double b) : alpha(a), beta(b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw ConfigError("Beta parameters must be finite and > 0");
}

double BetaDist::log_pdf(double x) const noexcept { return log_pdf(x, log_beta(alpha, beta)); }

double BetaDist::log_pdf(double x, double log_norm) const noexcept {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (x < 0.0 || x > 1.0) return -inf;
    // (a-1) log x with the a == 1 term taken as exactly zero at x == 0.
    const double left = alpha == 1.0 ? 0.0 : (alpha - 1.0) * std::log(x);
    const double right = beta == 1.0 ? 0.0 : (beta - 1.0) * std::log1p(-x);
    return left + right - log_norm;
}

double BetaDist::pdf(double x) const noexcept { return std::exp(log_pdf(x)); }

double BetaDist::cdf(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return boost::math::ibeta(alpha, beta, x);
}

BetaMixture::BetaMixture(std::vector<BetaDist> components) : components_(std::move(components)) {
    if (components_.empty()) throw ConfigError("mixture needs at least one component");
    log_norms_.reserve(components_.size());
    for (const auto& c : components_) log_norms_.push_back(log_beta(c.alpha, c.beta));
}

double BetaMixture::pdf(double x) const noexcept {
    double sum = 0.0;
    for (std::size_t i = 0; i < components_.size(); ++i)
        sum += std::exp(components_[i].log_pdf(x, log_norms_[i]));
    return sum / static_cast<double>(components_.size());
}

double BetaMixture::cdf(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double sum = 0.0;
    for (const auto& c : components_) sum += c.cdf(x);
    return std::clamp(sum / static_cast<double>(components_.size()), 0.0, 1.0);
}

double BetaMixture::quantile(double p) const {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    double x = std::clamp(mean(), 1e-12, 1.0 - 1e-12);
    for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
        const double f = cdf(x) - p;
        if (f == 0.0) return x;
        (f < 0.0 ? lo : hi) = x;
        const double slope = pdf(x);
        double next = slope > 0.0 && std::isfinite(slope) ? x - f / slope : 0.5 * (lo + hi);
        // Fall back to bisection whenever Newton leaves the bracket or stalls.
        if (!(next > lo && next < hi) || std::abs(next - x) > 0.5 * (hi - lo))
            next = 0.5 * (lo + hi);
        if (std::abs(next - x) < 1e-15) break;
        x = next;
    }
    return x;
}

double BetaMixture::mean() const noexcept {
    double sum = 0.0;
    for (const auto& c : components_) sum += c.mean();
    return sum / static_cast<double>(components_.size());
}

double BetaMixture::variance() const noexcept {
    const double n = static_cast<double>(components_.size());
    const double m = mean();
    double within = 0.0, between = 0.0;
    for (const auto& c : components_) {
        within += c.variance();
        between += (c.mean() - m) * (c.mean() - m);
    }
    return within / n + between / n;
}

bool BetaMixture::is_single_beta() const noexcept {
    return std::all_of(components_.begin(), components_.end(),
                       [&](const BetaDist& c) { return c == components_.front(); });
}

double BetaMixture::min_parameter() const noexcept {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& c : components_) m = std::min({m, c.alpha, c.beta});
    return m;
}

BetaDist moment_matched(const BetaMixture& mixture) {
    const double m = mixture.mean();
    const double v = mixture.variance();
    const double common = m * (1.0 - m) / v - 1.0;
    return BetaDist(m * common, (1.0 - m) * common);
}

}  // namespace pmt
