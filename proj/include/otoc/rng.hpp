#pragma once

#include <cstdint>
#include <random>

namespace otoc {

/// splitmix64; used to derive independent per-trajectory generator seeds so
/// results do not depend on the execution order of trajectories.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(mix_seed(seed, index));
}

}  // namespace otoc
