#pragma once

#include <span>
#include <vector>

#include "ksplit/exact.hpp"

namespace ksplit {

/// Instance scaled down by delta = eps * value(p) / (3n) and floored.
/// The scale is kept as an exact integer ratio; no floating point touches
/// the values. Elements smaller than delta round to zero, which the DP
/// tolerates (they shift no differences).
struct RoundedInstance {
    u128 scale_num = 1;  // eps.num * value(p)
    u128 scale_den = 1;  // 3 * n * eps.den
    std::vector<u64> values;
    u32 p = 0;
    Fraction eps;
};

inline RoundedInstance round_instance(const Instance& inst, u32 p, Fraction eps) {
    require_error_parameter(eps);
    if (p < 1 || p > inst.n()) throw ValidationError("restriction index p out of range");

    RoundedInstance out;
    out.p = p;
    out.eps = eps;
    out.scale_num = static_cast<u128>(eps.num) * inst.value(p);
    out.scale_den = static_cast<u128>(3) * inst.n() * eps.den;

    constexpr u128 kMax = ~static_cast<u128>(0);
    out.values.reserve(inst.n());
    u64 total = 0;
    for (u64 v : inst.values()) {
        if (v != 0 && out.scale_den > kMax / v)
            throw ValidationError("value overflow while rounding");
        u128 rounded = static_cast<u128>(v) * out.scale_den / out.scale_num;
        if (rounded > kMaxTotalValue - total)
            throw ValidationError("value overflow: rounded sum exceeds the supported width");
        total += static_cast<u64>(rounded);
        out.values.push_back(static_cast<u64>(rounded));
    }
    return out;
}

/// (1+eps)-approximation for the restricted problem: rounds, solves the
/// rounded instance exactly, and evaluates the returned index sets against
/// the original values.
inline SolveResult fptas_ssr_restricted(const Instance& inst, u32 p, Fraction eps,
                                        SolveOptions options = {}) {
    require_error_parameter(eps);
    if (p < 1 || p > inst.n()) throw ValidationError("restriction index p out of range");
    SolveResult res;
    if (p + inst.k() > inst.n() + 1) return res;

    RoundedInstance rounded = round_instance(inst, p, eps);
    auto sets =
        detail::exact_ssr_restricted_core(rounded.values, inst.k(), p, res.stats, options);
    KSPLIT_CHECK(sets.has_value(), "valid restrictions always admit a solution");
    for (const IndexSet& s : *sets) {
        u64 rounded_sum = 0;
        for (u32 i : s) rounded_sum += rounded.values[i - 1];
        KSPLIT_CHECK(rounded_sum > 0, "every feasible set keeps a positive rounded sum");
    }
    res.solution = make_solution(inst, std::move(*sets));
    KSPLIT_CHECK(check_feasible(*res.solution, inst, ProblemKind::SsrRestricted, p).ok,
                 "restricted scheme output must be feasible");
    return res;
}

/// (1+eps)-approximation for the unrestricted problem: best restricted
/// answer over every anchor p, ties to the smallest p.
inline SolveResult fptas_ssr(const Instance& inst, Fraction eps, SolveOptions options = {}) {
    require_error_parameter(eps);
    KSPLIT_CHECK(inst.k() <= inst.n(), "instance invariant k <= n");
    SolveResult best;
    std::vector<ExtendedRational> per_anchor;
    for (u32 p = 1; p + inst.k() <= inst.n() + 1; ++p) {
        options.check_deadline();
        SolveResult sub = fptas_ssr_restricted(inst, p, eps, options);
        KSPLIT_CHECK(sub.solution.has_value(), "every anchor in range is feasible");
        best.stats.merge(sub.stats);
        per_anchor.push_back(sub.solution->ratio);
        if (!best.solution || sub.solution->ratio < best.solution->ratio)
            best.solution = std::move(sub.solution);
        if (options.stop_at_ratio_one && best.solution->ratio == ExtendedRational::one()) break;
    }
    KSPLIT_CHECK(best.solution.has_value(), "instances with k <= n always admit a solution");
    for (const ExtendedRational& r : per_anchor)
        KSPLIT_CHECK(!(r < best.solution->ratio), "result must be the minimum over anchors");
    KSPLIT_CHECK(check_feasible(*best.solution, inst, ProblemKind::Ssr).ok,
                 "scheme output must be feasible");
    return best;
}

}  // namespace ksplit
