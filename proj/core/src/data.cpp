#include "pmt/data.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "pmt/error.hpp"

namespace pmt {
namespace {

constexpr double kAccuracyConsistency = 1e-12;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::string row_context(std::size_t line_no) { return "line " + std::to_string(line_no); }

double parse_real(std::string_view text, std::size_t line_no) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw DataError(row_context(line_no) + ": cannot parse metric '" + std::string(text) + "'");
    return value;
}

std::int64_t parse_integer(std::string_view text, std::size_t line_no) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw DataError(row_context(line_no) + ": cannot parse seed '" + std::string(text) + "'");
    return value;
}

double outcome_mean(const std::vector<std::uint8_t>& outcomes) {
    std::size_t hits = 0;
    for (auto o : outcomes) hits += o;
    return static_cast<double>(hits) / static_cast<double>(outcomes.size());
}

}  // namespace

std::string_view to_string(MetricKind kind) noexcept {
    switch (kind) {
        case MetricKind::accuracy: return "accuracy";
        case MetricKind::error: return "error";
        case MetricKind::angle: return "angle";
        case MetricKind::custom: return "custom";
    }
    return "custom";
}

std::string_view to_string(Orientation orientation) noexcept {
    return orientation == Orientation::higher_better ? "higher-better" : "lower-better";
}

MetricKind parse_metric_kind(std::string_view text) {
    if (text == "accuracy") return MetricKind::accuracy;
    if (text == "error") return MetricKind::error;
    if (text == "angle") return MetricKind::angle;
    if (text == "custom") return MetricKind::custom;
    throw ConfigError("unknown metric kind '" + std::string(text) + "'");
}

Orientation parse_orientation(std::string_view text) {
    if (text == "higher-better") return Orientation::higher_better;
    if (text == "lower-better") return Orientation::lower_better;
    throw ConfigError("unknown metric orientation '" + std::string(text) + "'");
}

PoolSchema PoolSchema::for_kind(MetricKind kind) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    PoolSchema schema;
    schema.kind = kind;
    switch (kind) {
        case MetricKind::accuracy:
            schema.orientation = Orientation::higher_better;
            schema.metric_lo = 0.0;
            schema.metric_hi = 1.0;
            break;
        case MetricKind::error:
            schema.orientation = Orientation::lower_better;
            schema.metric_lo = 0.0;
            schema.metric_hi = inf;
            break;
        case MetricKind::angle:
            schema.orientation = Orientation::lower_better;
            schema.metric_lo = 0.0;
            schema.metric_hi = 360.0;
            break;
        case MetricKind::custom:
            schema.orientation = Orientation::higher_better;
            schema.metric_lo = -inf;
            schema.metric_hi = inf;
            break;
    }
    return schema;
}

std::vector<double> InstancePool::metrics() const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.metric);
    return out;
}

void validate_pool(const InstancePool& pool, const PoolSchema& schema) {
    if (pool.records.empty()) throw DataError("empty pool '" + pool.label + "'");
    if (pool.size() < schema.min_rows || pool.size() > schema.max_rows)
        throw DataError("pool '" + pool.label + "' has " + std::to_string(pool.size()) +
                        " rows, outside the declared range");

    std::unordered_set<std::string_view> ids;
    std::optional<std::size_t> outcome_length;
    bool any_outcomes = false;
    for (std::size_t i = 0; i < pool.records.size(); ++i) {
        const auto& r = pool.records[i];
        const std::string where = "pool '" + pool.label + "' row " + std::to_string(i);
        if (r.instance_id.empty()) throw DataError(where + ": missing instance_id");
        if (!ids.insert(r.instance_id).second)
            throw DataError(where + ": duplicate instance_id '" + r.instance_id + "'");
        if (!std::isfinite(r.metric)) throw DataError(where + ": non-finite metric");
        if (r.metric < schema.metric_lo || r.metric > schema.metric_hi)
            throw DataError(where + ": metric " + format_double(r.metric) +
                            " outside declared range");

        if (i > 0 && r.outcomes.has_value() != any_outcomes)
            throw DataError(where + ": outcomes columns must be present for all rows or none");
        any_outcomes = r.outcomes.has_value();
        if (!r.outcomes) continue;
        if (r.outcomes->empty()) throw DataError(where + ": empty outcomes vector");
        if (outcome_length && *outcome_length != r.outcomes->size())
            throw DataError(where + ": ragged outcomes vector (" +
                            std::to_string(r.outcomes->size()) + " vs " +
                            std::to_string(*outcome_length) + ")");
        outcome_length = r.outcomes->size();
        for (auto o : *r.outcomes)
            if (o > 1) throw DataError(where + ": outcome values must be 0 or 1");
        if (schema.kind == MetricKind::accuracy &&
            std::abs(outcome_mean(*r.outcomes) - r.metric) > kAccuracyConsistency)
            throw DataError(where + ": metric " + format_double(r.metric) +
                            " disagrees with outcomes mean " +
                            format_double(outcome_mean(*r.outcomes)));
    }
}

InstancePool parse_pool(std::istream& in, const PoolSchema& schema, std::string label) {
    InstancePool pool;
    pool.label = std::move(label);
    pool.metric_kind = schema.kind;
    pool.orientation = schema.orientation;

    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> columns;
    while (std::getline(in, line)) {
        ++line_no;
        const auto view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        const auto fields = split_csv(view);
        if (!columns) {
            if (fields.size() < 3 || fields[0] != "instance_id" || fields[1] != "seed" ||
                fields[2] != "metric")
                throw DataError(row_context(line_no) +
                                ": header must start with instance_id,seed,metric");
            for (std::size_t c = 3; c < fields.size(); ++c)
                if (fields[c] != "o_" + std::to_string(c - 3))
                    throw DataError(row_context(line_no) + ": outcome column " +
                                    std::to_string(c - 3) + " must be named o_" +
                                    std::to_string(c - 3));
            columns = fields.size();
            continue;
        }
        if (fields.size() != *columns)
            throw DataError(row_context(line_no) + ": expected " + std::to_string(*columns) +
                            " columns, found " + std::to_string(fields.size()) +
                            " (ragged outcomes vector)");

        InstanceRecord record;
        if (fields[0].empty()) throw DataError(row_context(line_no) + ": missing instance_id");
        record.instance_id = std::string(fields[0]);
        if (!fields[1].empty()) record.seed = parse_integer(fields[1], line_no);
        if (fields[2].empty() && *columns == 3)
            throw DataError(row_context(line_no) + ": missing metric");
        if (*columns > 3) {
            std::vector<std::uint8_t> outcomes;
            outcomes.reserve(*columns - 3);
            for (std::size_t c = 3; c < fields.size(); ++c) {
                if (fields[c] == "0") outcomes.push_back(0);
                else if (fields[c] == "1") outcomes.push_back(1);
                else throw DataError(row_context(line_no) + ": outcome must be 0 or 1");
            }
            record.outcomes = std::move(outcomes);
        }
        if (fields[2].empty()) {
            record.metric = outcome_mean(*record.outcomes);
        } else {
            record.metric = parse_real(fields[2], line_no);
            if (!std::isfinite(record.metric))
                throw DataError(row_context(line_no) + ": non-finite metric");
        }
        pool.records.push_back(std::move(record));
    }
    if (!columns || pool.records.empty()) throw DataError("empty pool '" + pool.label + "'");
    validate_pool(pool, schema);
    return pool;
}

InstancePool load_pool(const std::filesystem::path& path, const PoolSchema& schema) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open pool file '" + path.string() + "'");
    auto pool = parse_pool(in, schema, path.stem().string());

    const std::string stem = path.stem().string();
    if (stem == "identity" || stem == "healthy") {
        pool.mutation_operator = "identity";
    } else if (const auto sep = stem.find('_'); sep != std::string::npos && sep > 0) {
        pool.mutation_operator = stem.substr(0, sep);
        pool.magnitude = stem.substr(sep + 1);
    } else {
        pool.mutation_operator = stem;
    }
    return pool;
}

void write_pool(std::ostream& out, const InstancePool& pool, std::span<const std::string> comment) {
    for (const auto& c : comment) out << "# " << c << '\n';
    const std::size_t outcome_columns =
        pool.records.empty() || !pool.records.front().outcomes
            ? 0
            : pool.records.front().outcomes->size();
    out << "instance_id,seed,metric";
    for (std::size_t c = 0; c < outcome_columns; ++c) out << ",o_" << c;
    out << '\n';
    for (const auto& r : pool.records) {
        out << r.instance_id << ',';
        if (r.seed) out << *r.seed;
        out << ',' << format_double(r.metric);
        if (r.outcomes)
            for (auto o : *r.outcomes) out << ',' << static_cast<int>(o);
        out << '\n';
    }
}

void write_pool(const std::filesystem::path& path, const InstancePool& pool,
                std::span<const std::string> comment) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write pool file '" + path.string() + "'");
    write_pool(out, pool, comment);
}

std::vector<InstanceRecord> derive_metric(std::vector<InstanceRecord> records) {
    for (auto& r : records) {
        if (!r.outcomes) throw DataError("record '" + r.instance_id + "' has no outcomes");
        if (r.outcomes->empty())
            throw DataError("record '" + r.instance_id + "' has an empty outcomes vector");
        r.metric = outcome_mean(*r.outcomes);
    }
    return records;
}

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, ptr);
}

}  // namespace pmt
