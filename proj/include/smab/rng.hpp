#pragma once

#include <cstdint>
#include <cstddef>
#include <random>

namespace smab {

// One engine type everywhere so that a (seed, call sequence) pair pins the
// exact stream. Every operation that draws randomness takes the engine by
// reference; nothing keeps hidden generator state.
using RngEngine = std::mt19937_64;

inline constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer. Bijective on 64-bit words; used to turn structured
// counters (run index, policy key, purpose) into well-spread seeds.
inline constexpr std::uint64_t mix64(std::uint64_t x) {
    x += kGolden64;
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

// Unbiased draw from {0, ..., count-1} (Lemire's multiply-shift rejection).
// This is the hot call of the bootstrap resampler, so it avoids
// std::uniform_int_distribution's per-call setup.
inline std::size_t uniform_index(RngEngine& rng, std::size_t count) {
    using u128 = unsigned __int128;
    const auto bound = static_cast<std::uint64_t>(count);
    std::uint64_t x = rng();
    u128 product = static_cast<u128>(x) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        while (low < threshold) {
            x = rng();
            product = static_cast<u128>(x) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::size_t>(product >> 64);
}

}  // namespace smab
