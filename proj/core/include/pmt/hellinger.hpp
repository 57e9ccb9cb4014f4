#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "pmt/beta.hpp"
#include "pmt/config.hpp"

namespace pmt {

/// Closed-form Hellinger distance between two Beta distributions, evaluated in
/// log space:  H^2 = 1 - B((a1+a2)/2, (b1+b2)/2) / sqrt(B(a1,b1) B(a2,b2)).
double hellinger_beta(const BetaDist& p, const BetaDist& q);

/// Hellinger distance between two densities on [0, 1] by adaptive quadrature
/// of sqrt(p q). Throws QuadratureError when `abs_tol` is not reached.
double hellinger_numeric(const std::function<double(double)>& p,
                         const std::function<double(double)>& q, double abs_tol = 1e-12);

/// Mixture against Beta. A mixture whose components are all identical is a
/// single Beta and goes through the closed form.
double hellinger(const BetaMixture& p, const BetaDist& q, double abs_tol = 1e-12);

/// Posteriors that all-"not mutant" and all-"mutant" trial runs would give.
struct IdealPosteriors {
    BetaDist not_killed;  // Beta(a, N + b)
    BetaDist killed;      // Beta(N + a, b)

    static IdealPosteriors from(const RunConfig& cfg);
};

enum class EffectClass {
    very_strong_not_killed,
    strong_not_killed,
    medium_not_killed,
    weak_not_killed,
    negligible,
    weak_killed,
    medium_killed,
    strong_killed,
    very_strong_killed,
};

enum class Verdict { likely_not_killed, inconclusive, likely_killed };

std::string_view to_string(EffectClass c) noexcept;
std::string_view to_string(Verdict v) noexcept;
/// Table mark: "o", "-", "+-", "+", "++".
std::string_view effect_mark(EffectClass c) noexcept;

/// Band edges of the similarity-ratio effect scale. Edges on the not-killed
/// side belong to the band nearer 1 ([0.82, 0.87) is strong); edges on the
/// killed side likewise ((1.15, 1.22] is strong); [0.97, 1.03] is negligible.
struct EffectScale {
    std::array<double, 4> below = {0.82, 0.87, 0.92, 0.97};
    std::array<double, 4> above = {1.03, 1.09, 1.15, 1.22};
};

EffectClass classify_effect(double ratio, const EffectScale& scale = {});

/// Thresholds for the graded verdict: likely killed iff ratio > kill,
/// likely not killed iff ratio < not_kill. The defaults coincide with the
/// strong bands of the default scale.
struct DecisionPolicy {
    double kill = 1.15;
    double not_kill = 0.87;

    static DecisionPolicy from(const RunConfig& cfg) { return {cfg.theta, cfg.not_killed_theta}; }
};

Verdict decide_verdict(double ratio, const DecisionPolicy& policy = {});

struct EffectReport {
    double ratio = 0.0;  // raw, possibly +infinity
    EffectClass effect_class = EffectClass::negligible;
    Verdict verdict = Verdict::inconclusive;
    double h_to_not_killed = 0.0;
    double h_to_killed = 0.0;
    BetaDist moment_matched;  // diagnostic only

    /// Two decimals, or ">2" above 2.
    std::string display_ratio() const;
};

EffectReport similarity_ratio(const BetaMixture& posterior, const IdealPosteriors& ideals,
                              const DecisionPolicy& policy = {}, const EffectScale& scale = {});

/// Fraction of ratios strictly above theta. Throws ConfigError on an empty
/// list or non-positive theta.
double mutation_score(std::span<const double> ratios, double theta);
double mutation_score(std::span<const EffectReport> reports, double theta);

}  // namespace pmt
