#pragma once

// Counter-based pseudo-randomness: value = mix(seed, stream, counter) with
// the splitmix64 finalizer. Pure function of its arguments, so colorings
// and resampling runs reproduce exactly from (seed, version).
//
// Stream assignment:
//   stream 0 — initial/independent point colors, counter = point index
//   stream 1 — resampling draws, counter = 2*event + endpoint (0 or 1)

#include <cstdint>

namespace chromacy {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace detail

inline std::uint64_t rng_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
    const std::uint64_t base = detail::splitmix64(seed + kGamma * (stream + 1));
    return detail::splitmix64(base + kGamma * (counter + 1));
}

// Uniform draw from 1..m by modulo reduction; the bias is ~m / 2^64 and
// irrelevant next to the determinism contract.
inline int rng_color(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter, int m) {
    return 1 + static_cast<int>(rng_at(seed, stream, counter) % static_cast<std::uint64_t>(m));
}

} // namespace chromacy
