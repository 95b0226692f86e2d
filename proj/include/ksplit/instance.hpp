#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "ksplit/common.hpp"
#include "ksplit/rational.hpp"

namespace ksplit {

/// Largest allowed total value sum. Keeps every subset sum in 62 bits so
/// cross-multiplied ratio comparisons and DP differences never overflow.
inline constexpr u64 kMaxTotalValue = u64(1) << 60;

/// A problem instance: positive integer weights sorted nondecreasing plus
/// the number k of subsets to select. Indices throughout the library are
/// 1-based positions into the sorted order; the permutation back to the
/// caller's original ordering is retained for reporting.
///
/// Immutable after construction; safe to share across concurrent solves.
class Instance {
public:
    u32 n() const { return static_cast<u32>(values_.size()); }
    u32 k() const { return k_; }

    /// Value at 1-based sorted position i.
    u64 value(u32 i) const {
        KSPLIT_CHECK(i >= 1 && i <= n(), "instance index out of range");
        return values_[i - 1];
    }

    std::span<const u64> values() const { return values_; }
    u64 total() const { return total_; }

    /// 0-based position of sorted element i (1-based) in the original input.
    u32 original_index(u32 i) const {
        KSPLIT_CHECK(i >= 1 && i <= n(), "instance index out of range");
        return order_[i - 1];
    }

    /// Contiguous slice [lo, hi] (1-based, inclusive) as a new instance with
    /// the same k. Used by the windowed scheme; the slice keeps identity
    /// original order (window-local reporting is the caller's concern).
    Instance slice(u32 lo, u32 hi) const {
        KSPLIT_CHECK(lo >= 1 && lo <= hi && hi <= n(), "bad slice bounds");
        Instance out;
        out.values_.assign(values_.begin() + (lo - 1), values_.begin() + hi);
        out.order_.resize(out.values_.size());
        std::iota(out.order_.begin(), out.order_.end(), 0u);
        out.k_ = k_;
        out.total_ = std::accumulate(out.values_.begin(), out.values_.end(), u64(0));
        return out;
    }

    /// Trusted constructor for values that are already sorted and bounded.
    static Instance from_sorted(std::vector<u64> sorted_values, u32 k) {
        Instance out;
        out.values_ = std::move(sorted_values);
        out.order_.resize(out.values_.size());
        std::iota(out.order_.begin(), out.order_.end(), 0u);
        out.k_ = k;
        out.total_ = std::accumulate(out.values_.begin(), out.values_.end(), u64(0));
        return out;
    }

private:
    Instance() = default;
    friend Instance validate_instance(const std::vector<long long>&, u32);

    std::vector<u64> values_;
    std::vector<u32> order_;
    u32 k_ = 0;
    u64 total_ = 0;
};

/// Checks and normalizes raw input: positive values, 2 <= k <= n, total sum
/// within the supported width. Sorting is stable so duplicate values keep
/// their input order in the retained permutation.
inline Instance validate_instance(const std::vector<long long>& raw_values, u32 k) {
    if (raw_values.empty()) throw ValidationError("instance is empty");
    if (k < 2) throw ValidationError("k must be at least 2");
    if (k > raw_values.size())
        throw InfeasibleError("k exceeds the number of elements; no feasible solution");

    std::vector<u32> order(raw_values.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](u32 a, u32 b) { return raw_values[a] < raw_values[b]; });

    Instance out;
    out.k_ = k;
    out.order_ = std::move(order);
    out.values_.reserve(raw_values.size());
    u64 total = 0;
    for (u32 pos : out.order_) {
        long long v = raw_values[pos];
        if (v <= 0) throw ValidationError("values must be positive integers");
        u64 uv = static_cast<u64>(v);
        if (uv > kMaxTotalValue - total)
            throw ValidationError("value overflow: total sum exceeds the supported width");
        total += uv;
        out.values_.push_back(uv);
    }
    out.total_ = total;
    return out;
}

/// Sum of the values at the given 1-based indices; 0 for the empty set.
inline u64 subset_sum(std::span<const u32> index_set, const Instance& inst) {
    u64 sum = 0;
    for (u32 i : index_set) {
        if (i < 1 || i > inst.n()) throw ValidationError("subset index out of range");
        sum += inst.value(i);
    }
    return sum;
}

/// Restriction parameters for anchor index p: the prefix sum of the first p
/// values, the largest index whose value that prefix sum covers, and how
/// many larger elements remain past it.
struct RestrictionContext {
    u32 p = 0;
    u64 prefix_sum = 0;   // sum of the p smallest values
    u32 cover = 0;        // largest index i with value(i) <= prefix_sum
    u32 large_count = 0;  // n - cover
};

namespace detail {

inline RestrictionContext restriction_context_over(std::span<const u64> values, u32 p) {
    RestrictionContext ctx;
    ctx.p = p;
    for (u32 i = 0; i < p; ++i) ctx.prefix_sum += values[i];
    // values sorted: binary search for the last element <= prefix_sum
    auto it = std::upper_bound(values.begin(), values.end(), ctx.prefix_sum);
    ctx.cover = static_cast<u32>(it - values.begin());
    ctx.large_count = static_cast<u32>(values.size()) - ctx.cover;
    KSPLIT_CHECK(ctx.cover >= p, "restriction cover must reach the anchor");
    return ctx;
}

}  // namespace detail

inline RestrictionContext restriction_context(const Instance& inst, u32 p) {
    if (p < 1 || p + inst.k() > inst.n() + 1)
        throw ValidationError("restriction index p out of range (need 1 <= p <= n-k+1)");
    return detail::restriction_context_over(inst.values(), p);
}

}  // namespace ksplit
