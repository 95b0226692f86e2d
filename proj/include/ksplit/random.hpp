#pragma once

#include "ksplit/common.hpp"

namespace ksplit {

/// Deterministic splitmix64 generator; used for instance generation so that
/// identical seeds produce identical instances on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(u64 seed) : state_(seed) {}

    u64 next() {
        u64 z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi] by rejection; lo <= hi.
    u64 uniform(u64 lo, u64 hi) {
        KSPLIT_CHECK(lo <= hi, "uniform bounds inverted");
        u64 span = hi - lo + 1;
        if (span == 0) return next();  // full 64-bit range
        u64 limit = ~u64(0) - (~u64(0) % span + 1) % span;
        u64 v;
        do {
            v = next();
        } while (v > limit);
        return lo + v % span;
    }

private:
    u64 state_;
};

}  // namespace ksplit
