#pragma once

#include <span>
#include <vector>

namespace pmt {

/// log B(a, b), via log-gamma.
double log_beta(double a, double b);

struct BetaDist {
    double alpha = 1.0;
    double beta = 1.0;

    BetaDist() = default;
    /// Throws ConfigError unless both parameters are finite and positive.
    BetaDist(double a, double b);

    double mean() const noexcept { return alpha / (alpha + beta); }
    double variance() const noexcept {
        const double s = alpha + beta;
        return alpha * beta / (s * s * (s + 1.0));
    }
    double log_pdf(double x) const noexcept;
    /// log density given a precomputed log_beta(alpha, beta).
    double log_pdf(double x, double log_norm) const noexcept;
    double pdf(double x) const noexcept;
    double cdf(double x) const;

    bool operator==(const BetaDist&) const = default;
};

/// Equal-weight mixture of Beta densities on [0, 1].
class BetaMixture {
  public:
    BetaMixture() = default;
    /// Throws ConfigError when `components` is empty.
    explicit BetaMixture(std::vector<BetaDist> components);

    std::span<const BetaDist> components() const noexcept { return components_; }
    std::size_t size() const noexcept { return components_.size(); }

    double pdf(double x) const noexcept;
    double cdf(double x) const;
    /// Inverse CDF by bracketed Newton iteration, to 1e-13 in x.
    double quantile(double p) const;

    /// Average of component means.
    double mean() const noexcept;
    /// E[component variance] + Var[component means].
    double variance() const noexcept;

    /// True when every component has identical parameters.
    bool is_single_beta() const noexcept;
    /// Smallest component parameter (guards endpoint evaluation).
    double min_parameter() const noexcept;

  private:
    std::vector<BetaDist> components_;
    std::vector<double> log_norms_;  // log B(alpha, beta) per component
};

/// Beta with the mixture's mean and variance.
BetaDist moment_matched(const BetaMixture& mixture);

}  // namespace pmt
