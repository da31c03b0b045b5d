#pragma once

#include <array>
#include <cstdint>

namespace linkdyn {

/// Counter-based Philox4x32-10 generator.
///
/// Distinct (seed, stream) pairs yield statistically independent substreams,
/// so the four mobility coordinates, the fading process and every
/// verification job can draw from a single master seed without sharing
/// state. Output is reproducible bit-for-bit across platforms.
class Philox4x32 {
public:
    using result_type = std::uint32_t;

    explicit Philox4x32(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return 0xffffffffu; }

    result_type operator()();

    std::uint64_t next_u64();

    /// Uniform on [0,1) with 53 random bits.
    double next_double();

    /// Standard normal via Box-Muller (second draw cached).
    double next_normal();

    /// Exponential with mean one.
    double next_exponential();

    /// One raw 128-bit block for a given counter/key; exposed for the
    /// known-answer tests.
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key);

private:
    void refill_();

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_;
    std::array<std::uint32_t, 4> out_{};
    int out_pos_ = 4;
    bool have_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

} // namespace linkdyn
