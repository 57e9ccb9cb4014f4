#include <gtest/gtest.h>

#include "pmt/config.hpp"
#include "pmt/error.hpp"

using namespace pmt;

TEST(RunConfig, DefaultsMatchTheReferenceSetup) {
    const RunConfig cfg;
    EXPECT_EQ(cfg.trials, 100);
    EXPECT_EQ(cfg.bootstraps, 100);
    EXPECT_EQ(cfg.n1, 20);
    EXPECT_EQ(cfg.n2, 20);
    EXPECT_EQ(cfg.prior_a, 1.0);
    EXPECT_EQ(cfg.prior_b, 1.0);
    EXPECT_EQ(cfg.ci_level, 0.95);
    EXPECT_EQ(cfg.theta, 1.15);
    EXPECT_NO_THROW(cfg.validate());
}

TEST(RunConfig, JsonAndKeyValueFormsAgree) {
    const auto a = parse_config(R"({"N": 50, "B": 10, "prior_a": 0.3333333333333333,
                                    "prior_b": 0.3333333333333333, "master_seed": 18446744073709551615})");
    const auto b = parse_config(
        "# comment\nN = 50\nB = 10\nprior_a = 0.3333333333333333\n"
        "prior_b = 0.3333333333333333 # neutral prior\nmaster_seed = 18446744073709551615\n");
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.master_seed, 18446744073709551615ull);
    EXPECT_EQ(a.n1, 20);
}

TEST(RunConfig, RoundTripsThroughJson) {
    RunConfig cfg;
    cfg.trials = 7;
    cfg.master_seed = 99;
    cfg.ci_level = 0.9;
    EXPECT_EQ(config_from_json(to_json(cfg)), cfg);
}

TEST(RunConfig, RejectsBadValuesAndKeys) {
    EXPECT_THROW(parse_config(R"({"N": 0})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"prior_a": -1})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"ci_level": 1.0})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"bogus": 1})"), ConfigError);
    EXPECT_THROW(parse_config("N 5"), ConfigError);
    EXPECT_THROW(parse_config(R"({"N": "x"})"), ConfigError);
}

TEST(RunConfig, PoolSizeCheck) {
    RunConfig cfg;
    EXPECT_NO_THROW(cfg.check_pool_sizes(20, 20));
    EXPECT_THROW(cfg.check_pool_sizes(19, 200), ConfigError);
    EXPECT_THROW(cfg.check_pool_sizes(200, 19), ConfigError);
}
