#include "pmt/mutation_test.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "pmt/error.hpp"

namespace pmt {
namespace {

struct SampleMoments {
    double mean = 0.0;
    double ss = 0.0;  // sum of squared deviations
};

SampleMoments moments(std::span<const double> v) {
    SampleMoments m;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    double sum = 0.0;
    for (double x : v) sum += x;
    m.mean = sum / static_cast<double>(v.size());
    if (*lo == *hi) {
        m.mean = *lo;
        return m;
    }
    for (double x : v) m.ss += (x - m.mean) * (x - m.mean);
    return m;
}

void require_two(std::span<const double> x, std::span<const double> y) {
    if (x.size() < 2 || y.size() < 2)
        throw ConfigError("two-sample statistics need at least 2 values per sample");
}

struct Pooled {
    double diff = 0.0;
    double sd = 0.0;
    double df = 0.0;
};

Pooled pooled(std::span<const double> x, std::span<const double> y) {
    const auto mx = moments(x);
    const auto my = moments(y);
    Pooled p;
    p.diff = mx.mean - my.mean;
    p.df = static_cast<double>(x.size() + y.size() - 2);
    p.sd = std::sqrt((mx.ss + my.ss) / p.df);
    return p;
}

double d_from(const Pooled& p) {
    if (p.sd == 0.0) {
        if (p.diff == 0.0) return 0.0;
        return std::copysign(std::numeric_limits<double>::infinity(), p.diff);
    }
    return p.diff / p.sd;
}

TTest t_from(const Pooled& p, std::size_t nx, std::size_t ny) {
    TTest r;
    r.df = p.df;
    if (p.sd == 0.0) {
        r.degenerate = true;
        r.t = p.diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), p.diff);
        r.p_value = p.diff == 0.0 ? 1.0 : 0.0;
        return r;
    }
    const double se = p.sd * std::sqrt(1.0 / static_cast<double>(nx) + 1.0 / static_cast<double>(ny));
    r.t = p.diff / se;
    const boost::math::students_t dist(r.df);
    r.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
    r.p_value = std::min(1.0, r.p_value);
    return r;
}

}  // namespace

std::string_view to_string(TestKind kind) noexcept {
    return kind == TestKind::statistical ? "statistical" : "pointwise-delta";
}

TestKind parse_test_kind(std::string_view text) {
    if (text == "statistical") return TestKind::statistical;
    if (text == "pointwise-delta" || text == "pointwise") return TestKind::pointwise_delta;
    throw ConfigError("unknown mutation test kind '" + std::string(text) + "'");
}

void MutationTest::validate() const {
    if (!(p_threshold > 0.0) || !(effect_threshold > 0.0) || !(delta_tolerance > 0.0))
        throw ConfigError("mutation test thresholds must be positive");
}

void MutationTest::check_sample_sizes(std::size_t n1, std::size_t n2) const {
    if (kind == TestKind::pointwise_delta && (n1 != 1 || n2 != 1))
        throw ConfigError("pointwise-delta test requires n1 = n2 = 1");
    if (kind == TestKind::statistical && (n1 < 2 || n2 < 2))
        throw ConfigError("statistical test requires n1, n2 >= 2");
}

double cohens_d(std::span<const double> x, std::span<const double> y) {
    require_two(x, y);
    return d_from(pooled(x, y));
}

TTest pooled_t_test(std::span<const double> x, std::span<const double> y) {
    require_two(x, y);
    return t_from(pooled(x, y), x.size(), y.size());
}

double two_sample_p_value(std::span<const double> x, std::span<const double> y) {
    return pooled_t_test(x, y).p_value;
}

TestVerdict run_test(const MutationTest& test, std::span<const double> healthy,
                     std::span<const double> mutant) {
    test.check_sample_sizes(healthy.size(), mutant.size());
    TestVerdict v;
    if (test.kind == TestKind::pointwise_delta) {
        v.killed = std::abs(healthy.front() - mutant.front()) > test.delta_tolerance;
        return v;
    }
    const auto p = pooled(healthy, mutant);
    const double d = d_from(p);
    const auto t = t_from(p, healthy.size(), mutant.size());
    v.effect_size = d;
    v.p_value = t.p_value;
    v.degenerate = t.degenerate;
    v.killed = t.p_value < test.p_threshold && std::abs(d) >= test.effect_threshold;
    return v;
}

TestVerdict run_test(const MutationTest& test, std::span<const InstanceRecord> healthy,
                     std::span<const InstanceRecord> mutant) {
    std::vector<double> h, m;
    h.reserve(healthy.size());
    m.reserve(mutant.size());
    for (const auto& r : healthy) h.push_back(r.metric);
    for (const auto& r : mutant) m.push_back(r.metric);
    return run_test(test, h, m);
}

bool kills(const MutationTest& test, std::span<const double> healthy,
           std::span<const double> mutant) {
    if (test.kind == TestKind::pointwise_delta)
        return std::abs(healthy.front() - mutant.front()) > test.delta_tolerance;
    const auto p = pooled(healthy, mutant);
    if (!(std::abs(d_from(p)) >= test.effect_threshold)) return false;
    return t_from(p, healthy.size(), mutant.size()).p_value < test.p_threshold;
}

}  // namespace pmt
