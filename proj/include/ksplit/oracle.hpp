#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ksplit/solution.hpp"

namespace ksplit {

/// The oracles refuse instances past these caps instead of running for hours.
struct OracleLimits {
    u32 max_n = 12;
    u32 max_k = 4;
};

namespace detail {

struct EnumSpec {
    u32 k = 2;
    u32 p = 0;                     // > 0: restricted variant (max(S1)=p, others > p)
    bool partition = false;        // every element must be assigned
    bool require_largest = false;  // element n must be assigned
};

/// Exhaustive enumeration over assignments of each element to one of the k
/// sets (or none, unless partitioning). Set labels are canonicalized by
/// first occurrence, which removes permutations of interchangeable sets;
/// the distinguished first set of the restricted variant is exempt.
/// Ties in ratio resolve to the lexicographically smallest assignment.
inline std::optional<Solution> enumerate_best(std::span<const u64> values, const EnumSpec& spec) {
    const u32 n = static_cast<u32>(values.size());
    const u32 k = spec.k;
    std::vector<u32> label(n + 1, 0);
    std::vector<u64> sums(k + 1, 0);
    std::vector<u32> last(k + 1, 0);   // most recent (= largest) element per set
    std::vector<u32> count(k + 1, 0);

    ExtendedRational best_ratio;
    bool have_best = false;
    std::vector<u32> best_label;

    // Symmetric labels start at 2 when the first set is distinguished.
    const u32 sym_base = spec.p > 0 ? 2u : 1u;

    auto consider_leaf = [&]() {
        if (!spec.partition) {
            for (u32 j = 1; j <= k; ++j)
                if (count[j] == 0) return;  // skip assignments with an empty set
        }
        if (spec.p > 0) {
            if (count[1] == 0 || last[1] != spec.p) return;
            for (u32 j = 2; j <= k; ++j)
                if (count[j] == 0 || last[j] <= spec.p) return;
        }
        ExtendedRational r = ratio_of_sums(std::span<const u64>(sums).subspan(1));
        if (!have_best || r < best_ratio) {
            have_best = true;
            best_ratio = r;
            best_label.assign(label.begin() + 1, label.end());
        }
    };

    auto rec = [&](auto&& self, u32 i, u32 sym_used) -> void {
        if (i > n) {
            consider_leaf();
            return;
        }
        auto assign = [&](u32 j) {
            u32 prev_last = last[j];
            label[i] = j;
            sums[j] += values[i - 1];
            last[j] = i;
            ++count[j];
            self(self, i + 1, j >= sym_base && j == sym_base + sym_used ? sym_used + 1 : sym_used);
            --count[j];
            last[j] = prev_last;
            sums[j] -= values[i - 1];
            label[i] = 0;
        };

        bool anchor = spec.p > 0 && i == spec.p;  // must land in the first set
        bool may_skip = !spec.partition && !anchor && !(spec.require_largest && i == n);
        if (may_skip) {
            label[i] = 0;
            self(self, i + 1, sym_used);
        }
        if (spec.p > 0) {
            if (i <= spec.p) assign(1);
            if (!anchor) {
                u32 hi = std::min(k, sym_base + sym_used);
                for (u32 j = sym_base; j <= hi; ++j) assign(j);
            }
        } else {
            u32 hi = std::min(k, sym_base + sym_used);
            for (u32 j = sym_base; j <= hi; ++j) assign(j);
        }
    };
    rec(rec, 1, 0);

    if (!have_best) return std::nullopt;
    SetFamily sets(k);
    for (u32 i = 1; i <= n; ++i)
        if (best_label[i - 1] != 0) sets[best_label[i - 1] - 1].push_back(i);
    return make_solution_over(values, std::move(sets));
}

inline void require_within_limits(std::span<const u64> values, u32 k, const OracleLimits& lim) {
    if (values.size() > lim.max_n)
        throw ValidationError("oracle refused: n exceeds the configured cap");
    if (k > lim.max_k) throw ValidationError("oracle refused: k exceeds the configured cap");
    if (k == 0) throw ValidationError("oracle needs k >= 1");
}

}  // namespace detail

inline SolveResult brute_force_ssr(std::span<const u64> values, u32 k, OracleLimits lim = {}) {
    detail::require_within_limits(values, k, lim);
    return {detail::enumerate_best(values, {.k = k}), {}};
}
inline SolveResult brute_force_ssr(const Instance& inst, OracleLimits lim = {}) {
    return brute_force_ssr(inst.values(), inst.k(), lim);
}

/// Restricted oracle; tolerates any p in [1, n] and reports infeasibility
/// (empty result) when no assignment satisfies the restriction.
inline SolveResult brute_force_ssr_restricted(std::span<const u64> values, u32 k, u32 p,
                                              OracleLimits lim = {}) {
    detail::require_within_limits(values, k, lim);
    if (p < 1 || p > values.size()) throw ValidationError("restriction index p out of range");
    return {detail::enumerate_best(values, {.k = k, .p = p}), {}};
}
inline SolveResult brute_force_ssr_restricted(const Instance& inst, u32 p, OracleLimits lim = {}) {
    return brute_force_ssr_restricted(inst.values(), inst.k(), p, lim);
}

inline SolveResult brute_force_partition(std::span<const u64> values, u32 k, OracleLimits lim = {}) {
    detail::require_within_limits(values, k, lim);
    return {detail::enumerate_best(values, {.k = k, .partition = true}), {}};
}
inline SolveResult brute_force_partition(const Instance& inst, OracleLimits lim = {}) {
    return brute_force_partition(inst.values(), inst.k(), lim);
}

inline SolveResult brute_force_ssr_largest(std::span<const u64> values, u32 k,
                                           OracleLimits lim = {}) {
    detail::require_within_limits(values, k, lim);
    return {detail::enumerate_best(values, {.k = k, .require_largest = true}), {}};
}
inline SolveResult brute_force_ssr_largest(const Instance& inst, OracleLimits lim = {}) {
    return brute_force_ssr_largest(inst.values(), inst.k(), lim);
}

}  // namespace ksplit
