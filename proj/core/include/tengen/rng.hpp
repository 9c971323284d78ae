#pragma once

#include <cstdint>

namespace tengen {

// xoshiro256** seeded through splitmix64. Self-contained so that seeded runs
// reproduce bit-identically regardless of the standard library in use.
class Rng {
public:
    explicit Rng(uint64_t seed = 0) { reseed(seed); }

    void reseed(uint64_t seed) {
        uint64_t x = seed;
        for (auto& word : state_) {
            word = split_mix(x);
        }
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Unbiased integer in [0, bound). bound must be nonzero.
    uint32_t next_below(uint32_t bound) {
        uint64_t m = static_cast<uint64_t>(static_cast<uint32_t>(next_u64())) * bound;
        auto lo = static_cast<uint32_t>(m);
        if (lo < bound) {
            const uint32_t threshold = (0u - bound) % bound;
            while (lo < threshold) {
                m = static_cast<uint64_t>(static_cast<uint32_t>(next_u64())) * bound;
                lo = static_cast<uint32_t>(m);
            }
        }
        return static_cast<uint32_t>(m >> 32);
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    float next_float() {
        return static_cast<float>(next_u64() >> 40) * 0x1.0p-24f;
    }

    // Uniform in [-range, range].
    double next_signed(double range) {
        return (next_double() * 2.0 - 1.0) * range;
    }

    static uint64_t split_mix(uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    uint64_t state_[4];
};

// Mixes a base seed with a stream index; used to derive independent
// per-game / per-worker seeds from one user-facing seed.
inline uint64_t mix_seed(uint64_t base, uint64_t stream) {
    uint64_t x = base ^ (0x9e3779b97f4a7c15ULL + stream * 0xbf58476d1ce4e5b9ULL);
    return Rng::split_mix(x);
}

} // namespace tengen
