#pragma once

#include <cstdint>
#include <limits>

namespace pmt {

/// SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/**
 * Deterministic, splittable random stream.
 *
 * A stream is identified by a 64-bit key; the n-th output is
 * mix64(key + n * golden), i.e. the SplitMix64 sequence started at `key`.
 * `split(i)` derives an independent child key from (key, i) without
 * consuming output, so the child for task i is the same whether tasks run
 * serially, in parallel, or in any order.
 *
 * All derived draws (bounded integers, uniforms, normals) are implemented
 * here rather than through <random> distributions, whose output differs
 * between standard library implementations.
 */
class Stream {
  public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t key) noexcept : key_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return mix64(key_ + (++counter_) * kGolden); }

    Stream split(std::uint64_t index) const noexcept {
        return Stream(mix64(key_ ^ mix64((index + 1) * kSplitStride)));
    }

    /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t bound) noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Standard normal variate (Box-Muller, one output per call).
    double normal() noexcept;

    std::uint64_t key() const noexcept { return key_; }

  private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;
    static constexpr std::uint64_t kSplitStride = 0xd1b54a32d192ed03ull;

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace pmt
