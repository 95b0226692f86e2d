#pragma once

#include <span>
#include <vector>

#include "ksplit/fptas.hpp"

namespace ksplit {

/// Anchors that cannot be the perfect restriction for a partitioning
/// instance: more large elements than non-anchor sets, or exactly k-1 large
/// elements while the anchor sits strictly inside the covered prefix.
inline bool prune_p(const RestrictionContext& ctx, u32 k) {
    if (ctx.large_count > k - 1) return true;
    if (ctx.large_count == k - 1 && ctx.p < ctx.cover) return true;
    return false;
}

/// The partitioning DP as a standalone operation over already-rounded
/// values: like the restricted subset-sum-ratio DP but every element joins
/// exactly one set, conflicts keep the incumbent, and the prune bound is the
/// exact rational prune_num/prune_den (2Q/delta in the full scheme, with Q
/// from the original values). Returns all surviving tuples reconstructed.
inline std::vector<SetFamily> dp_partition_restricted(std::span<const u64> rounded_values, u32 k,
                                                      u32 p, u128 prune_num, u128 prune_den,
                                                      SolveStats* stats = nullptr,
                                                      SolveOptions options = {}) {
    detail::DpConfig cfg{.k = k,
                         .p = p,
                         .prune = detail::PruneBound::rational(prune_num, prune_den),
                         .allow_skip = false,
                         .sum_conflict = false,
                         .options = options};
    detail::DifferenceDp dp(rounded_values, cfg);
    dp.run();
    if (stats) stats->merge(dp.stats());
    std::vector<SetFamily> out;
    out.reserve(dp.survivors().size());
    for (std::size_t c : dp.survivors()) out.push_back(dp.reconstruct(c));
    return out;
}

/// (1+eps)-approximation for ratio-minimal k-way partitioning.
///
/// For every non-pruned anchor p the large elements become forced
/// singletons, the covered prefix is rounded and partitioned by the DP, and
/// the best tuple per anchor is chosen by its ratio on the ROUNDED values.
/// The final answer is the stored per-anchor winner with the best ratio on
/// the ORIGINAL values.
inline SolveResult fptas_partition(const Instance& inst, Fraction eps, SolveOptions options = {}) {
    require_error_parameter(eps);
    const u32 n = inst.n();
    const u32 k = inst.k();
    SolveResult res;

    struct Winner {
        u32 p;
        Solution on_original;
    };
    std::vector<Winner> winners;
    u32 anchors_considered = 0;

    std::vector<u64> sums(k);
    for (u32 p = 1; p + k <= n + 1; ++p) {
        options.check_deadline();
        RestrictionContext ctx = restriction_context(inst, p);
        if (prune_p(ctx, k)) continue;
        ++anchors_considered;

        const u32 x = ctx.large_count;
        const u32 kp = k - x;
        KSPLIT_CHECK(kp >= 1 && p + kp <= ctx.cover + 1,
                     "surviving anchors satisfy the dp precondition");

        RoundedInstance rounded = round_instance(inst, p, eps);
        const u128 prune_num =
            detail::sat_mul_u128(static_cast<u128>(2) * ctx.prefix_sum, rounded.scale_den);
        detail::DpConfig cfg{.k = kp,
                             .p = p,
                             .prune = detail::PruneBound::rational(prune_num, rounded.scale_num),
                             .allow_skip = false,
                             .sum_conflict = false,
                             .options = options};
        detail::DifferenceDp dp(std::span<const u64>(rounded.values).first(ctx.cover), cfg);
        dp.run();
        res.stats.merge(dp.stats());
        if (dp.survivors().empty()) continue;  // infeasible anchor, dominated

        u64 covered_total = 0;
        for (u32 i = 0; i < ctx.cover; ++i) covered_total += rounded.values[i];
        for (u32 y = 0; y < x; ++y) sums[kp + y] = rounded.values[ctx.cover + y];

        std::size_t run_best = detail::DpRow::npos;
        ExtendedRational run_ratio;
        for (std::size_t c : dp.survivors()) {
            auto diffs = dp.survivor_diffs(c);
            i128 diff_total = 0;
            for (i64 d : diffs) diff_total += d;
            i128 first = (static_cast<i128>(covered_total) + diff_total) / kp;
            KSPLIT_CHECK((static_cast<i128>(covered_total) + diff_total) % kp == 0 && first >= 0,
                         "partition sums must divide evenly across the key");
            sums[0] = static_cast<u64>(first);
            for (u32 j = 0; j + 1 < kp; ++j) {
                i128 s = first - diffs[j];
                KSPLIT_CHECK(s >= 0, "set sum derived from a key must be nonnegative");
                sums[j + 1] = static_cast<u64>(s);
            }
            ExtendedRational r = detail::ratio_of_sums(sums);
            KSPLIT_CHECK(!r.is_infinite(), "feasible partition tuples have positive rounded sums");
            if (run_best == detail::DpRow::npos || r < run_ratio) {
                run_best = c;
                run_ratio = r;
            }
        }
        KSPLIT_CHECK(run_best != detail::DpRow::npos, "surviving rows yield a candidate");

        SetFamily sets = dp.reconstruct(run_best);
        sets.resize(k);
        for (u32 y = 0; y < x; ++y) sets[kp + y] = {ctx.cover + y + 1};
        winners.push_back({p, make_solution(inst, std::move(sets))});
    }

    KSPLIT_CHECK(anchors_considered > 0, "pruning never removes every anchor");
    KSPLIT_CHECK(!winners.empty(), "instances with k <= n always admit a partition");

    const Winner* final_winner = nullptr;
    for (const Winner& w : winners)
        if (!final_winner || w.on_original.ratio < final_winner->on_original.ratio)
            final_winner = &w;
    for (const Winner& w : winners)
        KSPLIT_CHECK(!(w.on_original.ratio < final_winner->on_original.ratio),
                     "result must be the minimum over stored winners");

    res.solution = final_winner->on_original;
    KSPLIT_CHECK(check_feasible(*res.solution, inst, ProblemKind::Partition).ok,
                 "partition output must cover every element disjointly");
    return res;
}

}  // namespace ksplit
