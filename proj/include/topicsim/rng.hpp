#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace topicsim {

// All randomness flows through mt19937_64 plus the fixed transforms below.
// Standard-library distributions are avoided on purpose: their output is not
// pinned by the standard, these transforms are, so equal seeds give equal
// streams on every toolchain.
using Rng = std::mt19937_64;

inline constexpr const char* kRngName = "mt19937_64";

// Uniform double in [0, 1), 53 usable bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Exponential inter-event gap with the given rate (mean 1/rate).
inline double exp_gap(Rng& rng, double rate) {
    return -std::log1p(-uniform01(rng)) / rate;
}

// Unbiased integer in [0, n) via 128-bit multiply rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    using u128 = unsigned __int128;
    std::uint64_t x = rng();
    u128 m = static_cast<u128>(x) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
        std::uint64_t threshold = -n % n;
        while (lo < threshold) {
            x = rng();
            m = static_cast<u128>(x) * n;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

} // namespace topicsim
