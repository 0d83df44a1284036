#pragma once

#include <cstdint>
#include <limits>

namespace bcc {

/// Seeded deterministic pseudo-random stream (splitmix64 core). derive(i)
/// spawns a child stream keyed only by the parent's seed and i, so sibling
/// streams do not depend on how much of any other stream was consumed.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 1) : seed_(seed), state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, n), n >= 1. Rejection sampling, unbiased.
    std::uint64_t next_below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t v = next_u64();
            if (v >= threshold) return v % n;
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    Rng derive(std::uint64_t index) const {
        std::uint64_t z = seed_ + (index + 1) * 0xD1B54A32D192ED03ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return Rng(z ^ (z >> 31));
    }

    std::uint64_t seed() const { return seed_; }

    // UniformRandomBitGenerator interface for <random> distributions.
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return next_u64(); }

private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

}  // namespace bcc
