#pragma once

#include <cstdint>

namespace spdh {

/// Deterministic 64-bit generator (splitmix64 stream). Produces identical
/// sequences on every platform and compiler, so seeded runs and failure
/// traces reproduce bit for bit.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        return finalize(state_);
    }

    /// Uniform draw from [0, n). Rejection sampling, no modulo bias.
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        const uint64_t rem = (UINT64_MAX % n + 1) % n; // 2^64 mod n
        uint64_t x = next();
        if (rem != 0) {
            while (x > UINT64_MAX - rem) x = next();
        }
        return x % n;
    }

    /// Uniform double in [0, 1) with 53 bits of entropy.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Derived independent stream; distinct indices give disjoint streams.
    Rng fork(uint64_t stream) const {
        return Rng(finalize(state_ ^ finalize(stream + 0x632be59bd9b4e019ull)));
    }

private:
    static uint64_t finalize(uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    uint64_t state_;
};

} // namespace spdh
