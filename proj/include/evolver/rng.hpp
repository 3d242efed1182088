#pragma once

#include <cstdint>

namespace evolver {

// SplitMix64 (Steele/Lea/Flood). The one PRNG used everywhere determinism
// matters: benchmark instance generation and mechanism perturbations.
// Fully specified, so streams are identical across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    uint32_t next_u32() { return static_cast<uint32_t>(next() >> 32); }

    // Uniform in [0, n). Modulo bias is irrelevant here; determinism is not.
    uint64_t next_below(uint64_t n) { return n == 0 ? 0 : next() % n; }

    // Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [-range, range].
    double next_symmetric(double range) { return (2.0 * next_unit() - 1.0) * range; }

private:
    uint64_t state_;
};

// Stable per-round stream: restarting a run re-derives identical perturbations.
inline SplitMix64 round_rng(uint64_t seed, int round) {
    return SplitMix64(seed ^ (0x9e3779b97f4a7c15ull * static_cast<uint64_t>(round + 1)));
}

} // namespace evolver
