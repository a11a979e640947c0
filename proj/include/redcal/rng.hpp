#pragma once

#include <cstdint>

namespace redcal {

/// Counter-based SplitMix64.
///
/// The i-th output (i = 0, 1, ...) of a stream with seed s is
/// `mix(s + (i + 1) * 0x9E3779B97F4A7C15)` where `mix` is the SplitMix64
/// finalizer. All arithmetic is mod 2^64. Bounded draws use the high word of
/// a 64x64->128 multiply, so every draw consumes exactly one output.
class SplitMix64 {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    constexpr std::uint64_t next() noexcept {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform-ish integer in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const unsigned __int128 wide = static_cast<unsigned __int128>(next()) * bound;
        return static_cast<std::uint64_t>(wide >> 64);
    }

    /// Double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bit() noexcept { return (next() >> 63) != 0; }

    /// Seed of the independent sub-stream number `index`; used to partition
    /// trials so that each can be replayed on its own.
    static constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t index) noexcept {
        return mix(seed ^ mix(index + kGamma));
    }

private:
    std::uint64_t state_;
};

} // namespace redcal
