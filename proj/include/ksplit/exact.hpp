#pragma once

#include <optional>
#include <span>

#include "ksplit/dp.hpp"

namespace ksplit {
namespace detail {

/// Core of the exact restricted solver, shared with the rounding scheme
/// (which feeds it rounded values, possibly containing zeros).
///
/// Scans x = 0..min(k-1, #elements past the covered prefix): the x largest
/// elements become forced singletons, the remaining k-x sets come from the
/// difference DP over the covered prefix. Candidates are ranked by the ratio
/// of their k sums, derived directly from each surviving cell's key; only
/// per-scan winners are reconstructed.
inline std::optional<SetFamily> exact_ssr_restricted_core(std::span<const u64> values, u32 k,
                                                          u32 p, SolveStats& stats,
                                                          const SolveOptions& options) {
    const u32 n = static_cast<u32>(values.size());
    KSPLIT_CHECK(k >= 1 && p >= 1 && p + k <= n + 1, "restricted core preconditions");
    RestrictionContext ctx = restriction_context_over(values, p);
    const u64 prefix = ctx.prefix_sum;
    const u32 cover = ctx.cover;

    bool have = false;
    ExtendedRational best_ratio;
    SetFamily best_sets;

    const u32 x_max = std::min(k - 1, n - cover);
    std::vector<u64> sums(k);
    for (u32 x = 0; x <= x_max; ++x) {
        const u32 kp = k - x;
        if (p + kp > cover + 1) continue;  // the DP needs p <= cover - k' + 1

        KSPLIT_CHECK(values[cover - 1] <= prefix, "covered values must not exceed the prefix sum");
        DpConfig cfg{.k = kp,
                     .p = p,
                     .prune = PruneBound::integer(static_cast<u128>(2) * prefix),
                     .allow_skip = true,
                     .sum_conflict = true,
                     .options = options};
        DifferenceDp dp(values.first(cover), cfg);
        dp.run();
        stats.merge(dp.stats());

        for (u32 y = 0; y < x; ++y) sums[kp + y] = values[cover + y];

        std::size_t run_best = DpRow::npos;
        ExtendedRational run_ratio;
        for (std::size_t c : dp.survivors()) {
            const u64 fs = dp.survivor_first_sum(c);
            sums[0] = fs;
            auto diffs = dp.survivor_diffs(c);
            for (u32 j = 0; j + 1 < kp; ++j) {
                i64 s = static_cast<i64>(fs) - diffs[j];
                KSPLIT_CHECK(s >= 0, "set sum derived from a key must be nonnegative");
                sums[j + 1] = static_cast<u64>(s);
            }
            ExtendedRational r = ratio_of_sums(std::span<const u64>(sums).first(k));
            if (run_best == DpRow::npos || r < run_ratio) {
                run_best = c;
                run_ratio = r;
            }
        }
        if (run_best != DpRow::npos && (!have || run_ratio < best_ratio)) {
            have = true;
            best_ratio = run_ratio;
            best_sets = dp.reconstruct(run_best);
            best_sets.resize(k);
            for (u32 y = 0; y < x; ++y) best_sets[kp + y] = {cover + y + 1};
        }
    }
    if (!have) return std::nullopt;
    return best_sets;
}

}  // namespace detail

/// Exact solver for the restricted problem: minimum-ratio k disjoint subsets
/// with max(S1) = p and max(Si) > p for the others. Restrictions with
/// p > n-k+1 are structurally infeasible and yield an empty result.
inline SolveResult exact_ssr_restricted(const Instance& inst, u32 p, SolveOptions options = {}) {
    if (p < 1 || p > inst.n()) throw ValidationError("restriction index p out of range");
    SolveResult res;
    if (p + inst.k() > inst.n() + 1) return res;

    auto sets = detail::exact_ssr_restricted_core(inst.values(), inst.k(), p, res.stats, options);
    KSPLIT_CHECK(sets.has_value(), "valid restrictions always admit a solution");
    res.solution = make_solution(inst, std::move(*sets));
    KSPLIT_CHECK(check_feasible(*res.solution, inst, ProblemKind::SsrRestricted, p).ok,
                 "exact restricted output must be feasible");
    return res;
}

}  // namespace ksplit
