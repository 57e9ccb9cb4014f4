#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "pmt/data.hpp"

namespace pmt {

enum class TestKind {
    statistical,      // p-value < p_threshold and |Cohen's d| >= effect_threshold
    pointwise_delta,  // single instance per side; killed iff metrics differ
};

std::string_view to_string(TestKind kind) noexcept;
TestKind parse_test_kind(std::string_view text);

/// A mutation test Z: (healthy sample, mutant sample) -> {killed, not killed}.
struct MutationTest {
    TestKind kind = TestKind::statistical;
    double p_threshold = 0.05;
    double effect_threshold = 0.5;
    double delta_tolerance = 1e-12;

    void validate() const;
    /// Throws ConfigError if this test cannot run on samples of these sizes.
    void check_sample_sizes(std::size_t n1, std::size_t n2) const;
};

struct TestVerdict {
    bool killed = false;
    std::optional<double> p_value;
    std::optional<double> effect_size;
    /// Zero pooled variance: the effect size is infinite or zero by convention.
    bool degenerate = false;
};

/// Pooled two-sample Student t statistic.
struct TTest {
    double t = 0.0;
    double df = 0.0;
    double p_value = 1.0;
    bool degenerate = false;
};

/// Cohen's d with pooled standard deviation (n-1 sample variances).
/// Zero pooled sd: returns 0 for equal means, +/-infinity otherwise.
double cohens_d(std::span<const double> x, std::span<const double> y);

/// Two-sided p-value of the group coefficient in a Gaussian / identity-link
/// GLM of metric on a binary group indicator, i.e. the pooled-variance
/// two-sample t test with |x|+|y|-2 degrees of freedom.
TTest pooled_t_test(std::span<const double> x, std::span<const double> y);
double two_sample_p_value(std::span<const double> x, std::span<const double> y);

TestVerdict run_test(const MutationTest& test, std::span<const double> healthy,
                     std::span<const double> mutant);
TestVerdict run_test(const MutationTest& test, std::span<const InstanceRecord> healthy,
                     std::span<const InstanceRecord> mutant);

/// Same decision as run_test(...).killed, skipping the p-value whenever the
/// effect-size condition already fails.
bool kills(const MutationTest& test, std::span<const double> healthy,
           std::span<const double> mutant);

}  // namespace pmt
