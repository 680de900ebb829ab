#pragma once

#include <cstdint>
#include <random>

namespace coopnet {

using Rng = std::mt19937_64;

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stream seed for task `index` under master `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index ^ 0x5851f42d4c957f2dULL));
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t index) { return Rng(derive_seed(seed, index)); }

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline int uniform_index(Rng& rng, int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(rng);
}

} // namespace coopnet
