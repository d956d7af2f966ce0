#pragma once

#include <cstdint>
#include <random>

namespace bbss {

/// splitmix64 step; used to derive independent per-instance seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Draws an index in [0, n) by rejection sampling on the raw 64-bit stream.
/// std::uniform_int_distribution is implementation-defined, which would make
/// "same seed, same output" silently non-portable; this is not.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    const std::uint64_t span = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return static_cast<std::size_t>(draw % span);
}

/// Uniform integer in [lo, hi], inclusive.
inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(hi - lo) + 1));
}

}  // namespace bbss
