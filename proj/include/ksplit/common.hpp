#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace ksplit {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// Bad input: unparsable files, values out of the supported range, k < 2, ...
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The problem instance admits no feasible solution (e.g. k > n).
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A solve exceeded its caller-supplied deadline.
struct TimeoutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Always-on internal invariant check (independent of NDEBUG).
#define KSPLIT_CHECK(cond, msg)                                               \
    do {                                                                      \
        if (!(cond)) throw std::logic_error(std::string("invariant: ") + (msg)); \
    } while (0)

/// Counters exposed by the difference-vector DP engines.
struct SolveStats {
    u64 dp_peak_states = 0;   // largest row (cell count) seen in any DP run
    u64 dp_state_checks = 0;  // number of per-row state-space bound checks performed
    u64 dp_runs = 0;

    void merge(const SolveStats& other) {
        if (other.dp_peak_states > dp_peak_states) dp_peak_states = other.dp_peak_states;
        dp_state_checks += other.dp_state_checks;
        dp_runs += other.dp_runs;
    }
};

struct SolveOptions {
    /// Stop scanning restrictions/windows once a ratio-1 solution is found.
    bool stop_at_ratio_one = false;
    /// Abort with TimeoutError when the deadline passes.
    std::optional<std::chrono::steady_clock::time_point> deadline;

    void check_deadline() const {
        if (deadline && std::chrono::steady_clock::now() > *deadline)
            throw TimeoutError("solve exceeded deadline");
    }
};

namespace detail {

/// a * b with saturation at the top of u128.
inline u128 sat_mul_u128(u128 a, u128 b) {
    if (a == 0 || b == 0) return 0;
    constexpr u128 kMax = ~static_cast<u128>(0);
    if (a > kMax / b) return kMax;
    return a * b;
}

/// ceil(num / den), saturating; den > 0.
inline u128 ceil_div_u128(u128 num, u128 den) {
    constexpr u128 kMax = ~static_cast<u128>(0);
    u128 q = num / den;
    if (num % den != 0) {
        if (q == kMax) return kMax;
        ++q;
    }
    return q;
}

/// 192-bit product of a u128 and a u64, split as (high, low) u128 halves
/// with low holding the bottom 64 bits only.
struct Prod192 {
    u128 high;  // bits 64..191
    u64 low;    // bits 0..63

    friend bool operator==(const Prod192&, const Prod192&) = default;
    friend auto operator<=>(const Prod192& a, const Prod192& b) {
        if (auto c = a.high <=> b.high; c != 0) return c;
        return a.low <=> b.low;
    }
};

inline Prod192 mul_192(u128 a, u64 b) {
    u128 lo = (a & 0xffffffffffffffffULL) * b;  // <= 2^128 - 2^65 + 1, no overflow
    u128 hi = (a >> 64) * b;
    return Prod192{hi + (lo >> 64), static_cast<u64>(lo)};
}

}  // namespace detail
}  // namespace ksplit
