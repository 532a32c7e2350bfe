#pragma once

#include <cstdint>
#include <random>

namespace lg {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic random stream. mt19937_64 output is pinned by the standard,
/// and uniform_below avoids std::uniform_int_distribution (whose mapping is
/// implementation-defined), so identical seeds reproduce identical artifacts
/// across compilers.
class rng {
public:
    explicit rng(uint64_t seed, uint64_t stream = 0)
        : engine_(splitmix64(splitmix64(seed) ^ splitmix64(0xa02bdbf7bb3c0a7ull * (stream + 1)))) {}

    uint64_t next() { return engine_(); }

    /// Uniform in [0, n), n >= 1, by rejection.
    uint64_t uniform_below(uint64_t n) {
        if (n <= 1) return 0;
        uint64_t mask = ~0ull >> __builtin_clzll((n - 1) | 1);
        for (;;) {
            uint64_t v = engine_() & mask;
            if (v < n) return v;
        }
    }

    bool coin() { return engine_() & 1; }

private:
    std::mt19937_64 engine_;
};

} // namespace lg
