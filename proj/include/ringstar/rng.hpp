#pragma once

#include <cstdint>

namespace ringstar {

// Purpose tags keep the independent draw streams from colliding even when
// they share the same (seed, step, node) triple.
enum class Draw : std::uint64_t {
    InitX = 1,        // initial activation per node
    SigmaNoise = 2,   // ring coupling noise per node per step
    MuNoise = 3,      // star coupling noise per node per step
    RingGate = 4,     // layer-wide ring Bernoulli per step
    StarGate = 5,     // layer-wide star Bernoulli per step
    RingLinkGate = 6, // per-link ring Bernoulli (optional mode)
    StarLinkGate = 7, // per-link star Bernoulli (optional mode)
    CellSeed = 8,     // sweep-cell seed derivation
};

// splitmix64 finalizer. Cheap, stateless, good avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Counter-based generator: every draw is a pure function of
// (seed, purpose, step, node). Evaluation order never matters, skipped draws
// cost nothing, and concurrent use needs no locks.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(Draw purpose, std::uint64_t step, std::uint64_t node) const {
        std::uint64_t h = mix64(seed_ ^ 0x243f6a8885a308d3ull);
        h = mix64(h ^ static_cast<std::uint64_t>(purpose));
        h = mix64(h ^ step);
        h = mix64(h ^ node);
        return h;
    }

    // Uniform on [0, 1), 53 random bits.
    double uniform01(Draw purpose, std::uint64_t step, std::uint64_t node) const {
        return static_cast<double>(bits(purpose, step, node) >> 11) * 0x1.0p-53;
    }

    // Uniform on [lo, hi).
    double uniform(Draw purpose, std::uint64_t step, std::uint64_t node,
                   double lo, double hi) const {
        return lo + (hi - lo) * uniform01(purpose, step, node);
    }

    // p >= 1 never fails and p <= 0 never fires, independent of rounding.
    bool bernoulli(Draw purpose, std::uint64_t step, std::uint64_t node, double p) const {
        if (p >= 1.0) return true;
        if (p <= 0.0) return false;
        return uniform01(purpose, step, node) < p;
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

} // namespace ringstar
