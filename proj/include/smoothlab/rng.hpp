#pragma once

#include <cstdint>
#include <random>

namespace smoothlab {

// All randomness flows through explicitly seeded mt19937_64 engines.
// Independent streams (per trial, per instance) are derived from
// (seed, stream) with splitmix64 so results are schedule-independent.

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline uint64_t stream_seed(uint64_t seed, uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(~stream));
}

inline std::mt19937_64 make_engine(uint64_t seed, uint64_t stream = 0) {
    return std::mt19937_64(stream_seed(seed, stream));
}

// Uniform double in [0, 1) with 53 random bits. Hand-rolled because the
// std distributions are not pinned across library implementations.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(std::mt19937_64& g, double p) { return uniform01(g) < p; }

// Uniform integer in [0, m), rejection-sampled to avoid modulo bias.
inline uint64_t uniform_below(std::mt19937_64& g, uint64_t m) {
    uint64_t threshold = (0 - m) % m;
    for (;;) {
        uint64_t x = g();
        if (x >= threshold) return x % m;
    }
}

inline uint64_t random_bits(std::mt19937_64& g, int nbits) {
    uint64_t x = g();
    return nbits >= 64 ? x : x & ((uint64_t{1} << nbits) - 1);
}

}  // namespace smoothlab
