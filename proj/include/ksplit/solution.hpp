#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "ksplit/instance.hpp"
#include "ksplit/rational.hpp"

namespace ksplit {

using IndexSet = std::vector<u32>;          // 1-based indices, ascending
using SetFamily = std::vector<IndexSet>;    // one entry per subset

/// k pairwise-disjoint index sets with their derived sums and ratio.
struct Solution {
    SetFamily sets;
    std::vector<u64> sums;
    ExtendedRational ratio;
};

struct SolveResult {
    std::optional<Solution> solution;  // empty: instance/restriction infeasible
    SolveStats stats;
};

namespace detail {

/// Largest-to-smallest ratio of the given sums; infinite when a sum is 0.
inline ExtendedRational ratio_of_sums(std::span<const u64> sums) {
    KSPLIT_CHECK(!sums.empty(), "ratio of zero sets");
    u64 mx = *std::max_element(sums.begin(), sums.end());
    u64 mn = *std::min_element(sums.begin(), sums.end());
    if (mn == 0) return ExtendedRational::infinity();
    return ExtendedRational(mx, mn);
}

inline void require_disjoint(const SetFamily& sets, u32 n) {
    std::vector<bool> seen(n + 1, false);
    for (const IndexSet& s : sets) {
        for (u32 i : s) {
            if (i < 1 || i > n) throw ValidationError("solution index out of range");
            if (seen[i]) throw ValidationError("solution sets are not pairwise disjoint");
            seen[i] = true;
        }
    }
}

inline Solution make_solution_over(std::span<const u64> values, SetFamily sets) {
    detail::require_disjoint(sets, static_cast<u32>(values.size()));
    Solution sol;
    sol.sums.reserve(sets.size());
    for (IndexSet& s : sets) std::sort(s.begin(), s.end());
    for (const IndexSet& s : sets) {
        u64 sum = 0;
        for (u32 i : s) sum += values[i - 1];
        sol.sums.push_back(sum);
    }
    sol.ratio = ratio_of_sums(sol.sums);
    sol.sets = std::move(sets);
    return sol;
}

}  // namespace detail

/// Derives sums and ratio for the given index sets over the instance.
/// Throws if the sets overlap or reference indices outside [1, n].
inline Solution make_solution(const Instance& inst, SetFamily sets) {
    return detail::make_solution_over(inst.values(), std::move(sets));
}

/// The ratio operation on its own (recomputes from scratch).
inline ExtendedRational solution_ratio(const SetFamily& sets, const Instance& inst) {
    Solution s = make_solution(inst, sets);
    return s.ratio;
}

enum class ProblemKind {
    Ssr,                   // k disjoint subsets
    SsrRestricted,         // max(S1) = p, max(Si) > p otherwise
    SsrLargest,            // element n must be used
    Partition,             // sets cover [n]
    PartitionRestricted,   // both of the above restrictions
};

struct Feasibility {
    bool ok = true;
    std::string violation;  // first violated constraint, empty when ok

    explicit operator bool() const { return ok; }
};

/// Structural feasibility of a solution for the given problem kind.
/// Reports the first violated constraint instead of throwing.
inline Feasibility check_feasible(const Solution& sol, const Instance& inst, ProblemKind kind,
                                  u32 p = 0) {
    if (sol.sets.size() != inst.k()) return {false, "wrong number of sets"};

    std::vector<bool> seen(inst.n() + 1, false);
    for (const IndexSet& s : sol.sets) {
        for (u32 i : s) {
            if (i < 1 || i > inst.n()) return {false, "index out of range"};
            if (seen[i]) return {false, "sets not pairwise disjoint"};
            seen[i] = true;
        }
    }

    if (kind == ProblemKind::SsrRestricted || kind == ProblemKind::PartitionRestricted) {
        const IndexSet& first = sol.sets.front();
        if (first.empty() || *std::max_element(first.begin(), first.end()) != p)
            return {false, "first set max is not p"};
        for (std::size_t j = 1; j < sol.sets.size(); ++j) {
            const IndexSet& s = sol.sets[j];
            if (s.empty() || *std::max_element(s.begin(), s.end()) <= p)
                return {false, "some set has max <= p"};
        }
    }
    if (kind == ProblemKind::SsrLargest) {
        if (!seen[inst.n()]) return {false, "largest element unused"};
    }
    if (kind == ProblemKind::Partition || kind == ProblemKind::PartitionRestricted) {
        for (u32 i = 1; i <= inst.n(); ++i)
            if (!seen[i]) return {false, "not a partition"};
    }
    return {};
}

}  // namespace ksplit
