#pragma once

#include <cstdint>
#include <random>

namespace grenlab {

// splitmix64 finalizer (Steele, Lea, Flood 2014). Used to derive independent
// per-replication streams from (seed, n, repIndex). The exact mixing formula
// is part of the reproducibility contract of this implementation only;
// cross-implementation stream equality is not a goal.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Sub-seed for replication `rep` of sample size `n` under master `seed`.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t rep) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ n);
    h = splitmix64(h ^ rep);
    return h;
}

inline std::mt19937_64 make_engine(std::uint64_t sub_seed) {
    return std::mt19937_64(sub_seed);
}

} // namespace grenlab
