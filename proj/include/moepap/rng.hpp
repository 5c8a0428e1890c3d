#pragma once

#include <cstdint>
#include <random>

namespace moepap {

using Rng = std::mt19937_64;

/// Mixes a base seed with a stream index into an independent seed.
/// Used for per-member and per-repetition seeds so that adding or removing
/// a stream leaves the others untouched.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
    // splitmix64 finalizer over the combined state
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline double uniform01(Rng& rng)
{
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double uniform(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Uniform integer in [lo, hi].
inline long uniform_int(Rng& rng, long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

} // namespace moepap
