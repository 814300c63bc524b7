#pragma once

#include <cstdint>

namespace tropweier {

// SplitMix64: the 64-bit mixing generator of Steele, Lea and Flood. Chosen
// for reproducibility across platforms; every experiment derives its stream
// deterministically from (seed, degree).
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform-ish draw in [0, bound); bound must be positive. The modulo
    // bias is irrelevant here, determinism is the contract.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

// Stream key for a (seed, degree) pair.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    SplitMix64 s(seed ^ (salt * 0x9E3779B97F4A7C15ULL));
    return s.next();
}

}  // namespace tropweier
