#include <gtest/gtest.h>

#include <cmath>

#include "pmt/beta.hpp"
#include "pmt/error.hpp"
#include "pmt/quadrature.hpp"

using namespace pmt;

TEST(BetaDist, RejectsInvalidParameters) {
    EXPECT_THROW(BetaDist(0.0, 1.0), ConfigError);
    EXPECT_THROW(BetaDist(1.0, -2.0), ConfigError);
    EXPECT_THROW(BetaDist(INFINITY, 1.0), ConfigError);
}

TEST(BetaDist, DensityAtEndpoints) {
    EXPECT_DOUBLE_EQ(BetaDist(1, 1).pdf(0.0), 1.0);
    EXPECT_NEAR(BetaDist(101, 1).pdf(1.0), 101.0, 1e-10);
    EXPECT_NEAR(BetaDist(1, 101).pdf(0.0), 101.0, 1e-10);
    EXPECT_EQ(BetaDist(2, 2).pdf(0.0), 0.0);
    EXPECT_EQ(BetaDist(2, 2).pdf(1.5), 0.0);
}

TEST(BetaDist, LargeParametersDoNotOverflow) {
    const BetaDist b(150, 60);
    EXPECT_TRUE(std::isfinite(b.pdf(b.mean())));
    const auto mass = integrate([&](double x) { return b.pdf(x); }, 0.0, 1.0, 1e-12);
    EXPECT_NEAR(mass.value, 1.0, 1e-10);
}

TEST(BetaMixture, MeanAndVarianceIdentities) {
    const BetaMixture m({BetaDist(2, 2), BetaDist(4, 2)});
    EXPECT_NEAR(m.mean(), 7.0 / 12.0, 1e-15);
    // E[var] + Var[mean] against direct second moment.
    const double second = 0.5 * (2.0 * 3.0 / (4.0 * 5.0)) + 0.5 * (4.0 * 5.0 / (6.0 * 7.0));
    EXPECT_NEAR(m.variance(), second - m.mean() * m.mean(), 1e-15);
}

TEST(BetaMixture, CdfIsMonotoneWithExactEnds) {
    const BetaMixture m({BetaDist(2, 8), BetaDist(8, 2), BetaDist(1, 101)});
    EXPECT_EQ(m.cdf(0.0), 0.0);
    EXPECT_EQ(m.cdf(1.0), 1.0);
    double prev = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double c = m.cdf(i / 2000.0);
        EXPECT_GE(c, prev);
        prev = c;
    }
    EXPECT_NEAR(prev, 1.0, 1e-9);
}

TEST(BetaMixture, QuantileInvertsCdf) {
    const BetaMixture m({BetaDist(2, 8), BetaDist(8, 2)});
    for (double p : {0.001, 0.025, 0.3, 0.5, 0.77, 0.975, 0.999})
        EXPECT_NEAR(m.cdf(m.quantile(p)), p, 1e-12);
    // Beta(101, 1): F(x) = x^101.
    const BetaMixture sharp({BetaDist(101, 1)});
    EXPECT_NEAR(sharp.quantile(0.025), std::pow(0.025, 1.0 / 101.0), 1e-12);
}

TEST(MomentMatched, ReproducesMixtureMoments) {
    const BetaMixture m({BetaDist(20, 80), BetaDist(30, 70)});
    const auto b = moment_matched(m);
    EXPECT_NEAR(b.mean(), m.mean(), 1e-12);
    EXPECT_NEAR(b.variance(), m.variance(), 1e-12);
}
