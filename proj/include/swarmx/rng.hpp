#pragma once

#include <cstdint>

namespace swarmx {

// splitmix64 finalizer (Steele, Lea, Flood / Vigna). Stable across platforms.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Order-sensitive hash chain used to key generators from structured tuples.
// hash_combine(hash_combine(h, a), b) != hash_combine(hash_combine(h, b), a).
inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
    return mix64(h ^ (v + 0x9E3779B97F4A7C15ULL + (h << 12) + (h >> 4)));
}

// Deterministic 64-bit generator: splitmix64 stream. Every draw consumes
// exactly one state increment, so the draw sequence is reproducible from
// the seed alone on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Unbiased uniform integer in [0, n), n >= 1. Rejection sampling.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

} // namespace swarmx
