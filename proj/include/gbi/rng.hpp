#pragma once

#include <cstdint>

namespace gbi {

// Counter-based random numbers: every draw is addressed by (seed, index),
// so parallel workers produce the same stream regardless of how samples are
// split between them.  The generator is splitmix64 evaluated at a counter
// offset (finalizer of seed + (n+1)*gamma), which passes BigCrush.

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t n) {
    return mix64(seed + (n + 1) * kGolden);
}

// Uniform double in [0, 1), 53 random bits.
inline double counter_uniform(std::uint64_t seed, std::uint64_t n) {
    return static_cast<double>(counter_u64(seed, n) >> 11) * 0x1.0p-53;
}

// Small sequential engine for optimizer restarts and test data.
struct SplitMix {
    std::uint64_t state;

    explicit SplitMix(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        state += kGolden;
        return mix64(state);
    }

    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }
};

} // namespace gbi
