#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pmt {

enum class MetricKind { accuracy, error, angle, custom };
enum class Orientation { higher_better, lower_better };

std::string_view to_string(MetricKind kind) noexcept;
std::string_view to_string(Orientation orientation) noexcept;
MetricKind parse_metric_kind(std::string_view text);
Orientation parse_orientation(std::string_view text);

/// Declared shape of a pool file. Bounds are enforced on load, never clamped.
struct PoolSchema {
    MetricKind kind = MetricKind::accuracy;
    Orientation orientation = Orientation::higher_better;
    double metric_lo = 0.0;
    double metric_hi = 1.0;
    std::size_t min_rows = 1;
    std::size_t max_rows = std::numeric_limits<std::size_t>::max();

    /// Default orientation and metric range for a metric kind.
    static PoolSchema for_kind(MetricKind kind);
};

/// Evaluation of one trained instance on a fixed test set.
struct InstanceRecord {
    std::string instance_id;
    std::optional<std::int64_t> seed;
    double metric = 0.0;
    /// Per-test-input correctness (0/1), when the producer recorded it.
    std::optional<std::vector<std::uint8_t>> outcomes;
};

/// Population of evaluated instances for one (model, mutation, magnitude).
struct InstancePool {
    std::string label;
    std::string mutation_operator = "identity";
    std::optional<std::string> magnitude;
    MetricKind metric_kind = MetricKind::accuracy;
    Orientation orientation = Orientation::higher_better;
    std::vector<InstanceRecord> records;

    std::size_t size() const noexcept { return records.size(); }
    bool is_identity() const noexcept { return mutation_operator == "identity"; }
    std::vector<double> metrics() const;
};

/// Checks every pool invariant against `schema`; throws DataError naming the
/// offending row.
void validate_pool(const InstancePool& pool, const PoolSchema& schema);

/// Parses `instance_id,seed,metric[,o_0,...]`. Lines starting with '#' are
/// comments. Pool metadata (operator, magnitude) is left at defaults.
InstancePool parse_pool(std::istream& in, const PoolSchema& schema, std::string label);

/// Reads and validates a pool file. The label is the file stem; a stem of the
/// form `<operator>_<magnitude>` fills the mutation metadata, and the stems
/// `identity` and `healthy` mark the identity pool.
InstancePool load_pool(const std::filesystem::path& path, const PoolSchema& schema);

/// Writes the pool in the CSV schema. Metrics use the shortest representation
/// that round-trips exactly. `comment` lines are emitted first, each prefixed
/// with "# ".
void write_pool(std::ostream& out, const InstancePool& pool,
                std::span<const std::string> comment = {});
void write_pool(const std::filesystem::path& path, const InstancePool& pool,
                std::span<const std::string> comment = {});

/// Fills metric with the mean of each record's outcomes vector.
std::vector<InstanceRecord> derive_metric(std::vector<InstanceRecord> records);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace pmt
