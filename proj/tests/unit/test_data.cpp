#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pmt/data.hpp"
#include "pmt/error.hpp"
#include "pmt/rng.hpp"

using namespace pmt;

namespace {

InstancePool parse(const std::string& text, PoolSchema schema = {}) {
    std::istringstream in(text);
    return parse_pool(in, schema, "test");
}

std::string rows_with_metric_only(std::size_t n) {
    std::ostringstream out;
    out << "instance_id,seed,metric\n";
    for (std::size_t i = 0; i < n; ++i) out << "inst-" << i << ',' << i << ",0.9" << i % 10 << '\n';
    return out.str();
}

}  // namespace

TEST(LoadPool, MetricOnlyFileWith200Rows) {
    const auto pool = parse(rows_with_metric_only(200));
    EXPECT_EQ(pool.size(), 200u);
    EXPECT_FALSE(pool.records.front().outcomes.has_value());
    EXPECT_DOUBLE_EQ(pool.records[3].metric, 0.93);
    EXPECT_EQ(pool.records[3].seed, 3);
}

TEST(LoadPool, OutcomesInconsistentWithAccuracyIsRejected) {
    std::ostringstream text;
    text << "instance_id,seed,metric";
    for (int c = 0; c < 100; ++c) text << ",o_" << c;
    text << "\na,1,0.45";
    for (int c = 0; c < 100; ++c) text << ',' << (c < 44 ? 1 : 0);
    text << '\n';
    EXPECT_THROW(parse(text.str()), DataError);
}

TEST(LoadPool, OutcomesConsistentWithAccuracyLoads) {
    const auto pool = parse("instance_id,seed,metric,o_0,o_1,o_2,o_3\na,1,0.5,1,0,1,0\nb,,0.75,1,1,1,0\n");
    ASSERT_EQ(pool.size(), 2u);
    EXPECT_EQ(pool.records[0].outcomes->size(), 4u);
    EXPECT_FALSE(pool.records[1].seed.has_value());
}

TEST(LoadPool, EmptyFileIsEmptyPool) {
    try {
        parse("");
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("empty pool"), std::string::npos);
    }
    EXPECT_THROW(parse("instance_id,seed,metric\n"), DataError);
}

TEST(LoadPool, DuplicateOrMissingIdNamesTheRow) {
    try {
        parse("instance_id,seed,metric\na,1,0.5\nb,2,0.5\na,3,0.5\n");
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos);
    }
    EXPECT_THROW(parse("instance_id,seed,metric\n,1,0.5\n"), DataError);
}

TEST(LoadPool, NonFiniteMetricRejected) {
    EXPECT_THROW(parse("instance_id,seed,metric\na,1,nan\n", PoolSchema::for_kind(MetricKind::custom)),
                 DataError);
    EXPECT_THROW(parse("instance_id,seed,metric\na,1,inf\n", PoolSchema::for_kind(MetricKind::custom)),
                 DataError);
}

TEST(LoadPool, RaggedOutcomesRejected) {
    EXPECT_THROW(parse("instance_id,seed,metric,o_0,o_1\na,1,0.5,1,0\nb,1,1,1\n"), DataError);
}

TEST(LoadPool, DeclaredRangeEnforcedNotClamped) {
    EXPECT_THROW(parse("instance_id,seed,metric\na,1,1.2\n"), DataError);
    auto schema = PoolSchema::for_kind(MetricKind::error);
    EXPECT_EQ(schema.orientation, Orientation::lower_better);
    EXPECT_DOUBLE_EQ(parse("instance_id,seed,metric\na,1,1.2\n", schema).records[0].metric, 1.2);
    schema.max_rows = 1;
    EXPECT_THROW(parse("instance_id,seed,metric\na,1,1\nb,1,2\n", schema), DataError);
}

TEST(LoadPool, CommentsAndMetadataFromFileName) {
    const auto dir = std::filesystem::temp_directory_path() / "pmt_data_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "TRD_9.29.csv";
    {
        std::ofstream out(path);
        out << "# generated\ninstance_id,seed,metric\na,1,0.5\n";
    }
    const auto pool = load_pool(path, {});
    EXPECT_EQ(pool.label, "TRD_9.29");
    EXPECT_EQ(pool.mutation_operator, "TRD");
    EXPECT_EQ(pool.magnitude, "9.29");
    EXPECT_FALSE(pool.is_identity());
    EXPECT_THROW(load_pool(dir / "missing.csv", {}), DataError);
}

TEST(WritePool, RoundTripIsBitIdentical) {
    Stream rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        InstancePool pool;
        pool.label = "p";
        const bool with_outcomes = trial % 2 == 1;
        for (int i = 0; i < 30; ++i) {
            InstanceRecord r;
            r.instance_id = "id" + std::to_string(i);
            if (i % 3) r.seed = static_cast<std::int64_t>(rng()) / 2;
            if (with_outcomes) {
                std::vector<std::uint8_t> o(17);
                for (auto& v : o) v = rng.below(2);
                r.outcomes = o;
                r.metric = derive_metric({r}).front().metric;
            } else {
                r.metric = rng.uniform();
            }
            pool.records.push_back(r);
        }
        std::stringstream first;
        write_pool(first, pool, std::vector<std::string>{"header line"});
        const auto reloaded = parse_pool(first, {}, "p");
        ASSERT_EQ(reloaded.size(), pool.size());
        for (std::size_t i = 0; i < pool.size(); ++i) {
            EXPECT_EQ(reloaded.records[i].instance_id, pool.records[i].instance_id);
            EXPECT_EQ(reloaded.records[i].seed, pool.records[i].seed);
            EXPECT_EQ(std::bit_cast<std::uint64_t>(reloaded.records[i].metric),
                      std::bit_cast<std::uint64_t>(pool.records[i].metric));
            EXPECT_EQ(reloaded.records[i].outcomes, pool.records[i].outcomes);
        }
        std::stringstream second;
        write_pool(second, reloaded);
        std::stringstream first_plain;
        write_pool(first_plain, pool);
        EXPECT_EQ(second.str(), first_plain.str());
    }
}

TEST(DeriveMetric, MeanOfOutcomes) {
    InstanceRecord a{"a", {}, 0.0, std::vector<std::uint8_t>{1, 1, 1, 1}};
    InstanceRecord b{"b", {}, 0.0, std::vector<std::uint8_t>{1, 0, 1, 0}};
    const auto out = derive_metric({a, b});
    EXPECT_EQ(out[0].metric, 1.0);
    EXPECT_EQ(out[1].metric, 0.5);
}

TEST(DeriveMetric, EmptyOrAbsentOutcomesIsError) {
    EXPECT_THROW(derive_metric({InstanceRecord{"a", {}, 0.0, std::vector<std::uint8_t>{}}}), DataError);
    EXPECT_THROW(derive_metric({InstanceRecord{"a", {}, 0.0, std::nullopt}}), DataError);
}
