#pragma once

#include <cmath>

#include "ksplit/fptas.hpp"

namespace ksplit {

/// Sizing constants for the near-linear scheme: each candidate ending index
/// keeps only the `width` largest elements before running the quadratic
/// scheme on the window.
struct WindowParams {
    Fraction eps_inner;
    u64 decay_steps = 0;  // 1 + ceil((1 + 1/e) ln(2(k-1)/e^2))
    u64 width = 0;        // (decay_steps + 1) * (k - 1)
};

/// Evaluates the window-width formula with upward-rounded extended-precision
/// arithmetic: the ceiling may overshoot a razor-edge tie by one (keeping
/// every guarantee intact) but is never under-estimated.
inline WindowParams window_size(u32 k, Fraction eps_inner) {
    if (k < 2) throw ValidationError("window sizing needs k >= 2");
    require_error_parameter(eps_inner);

    const long double num = static_cast<long double>(eps_inner.num);
    const long double den = static_cast<long double>(eps_inner.den);
    const long double factor = (num + den) / num;                        // 1 + 1/eps
    const long double arg = 2.0L * (k - 1) * (den / num) * (den / num);  // 2(k-1)/eps^2
    const long double t = factor * std::log(arg);
    const long double pad = t * 1e-15L + 1e-15L;
    const u64 ceiling = static_cast<u64>(std::ceil(t + pad));

    WindowParams out;
    out.eps_inner = eps_inner;
    out.decay_steps = 1 + ceiling;
    out.width = (out.decay_steps + 1) * (k - 1);
    return out;
}

/// Near-linear (1+eps)-approximation for the unrestricted problem: for each
/// ending index j >= k, solve the window of the `width` largest elements of
/// the prefix [1, j] with the quadratic scheme at error eps/3 (the window
/// width also uses eps/3, so the two factors compose to at most 1+eps), and
/// keep the best solution mapped back to global indices.
inline SolveResult fast_fptas_ssr(const Instance& inst, Fraction eps, SolveOptions options = {}) {
    require_error_parameter(eps);
    KSPLIT_CHECK(inst.k() <= inst.n(), "instance invariant k <= n");
    if (eps.den > (~u64(0)) / 3) throw ValidationError("error parameter denominator too large");
    const Fraction inner(eps.num, eps.den * 3);
    const WindowParams params = window_size(inst.k(), inner);

    SolveResult best;
    for (u32 j = inst.k(); j <= inst.n(); ++j) {
        options.check_deadline();
        const u32 lo = params.width >= j ? 1 : j - static_cast<u32>(params.width) + 1;
        KSPLIT_CHECK(j - lo + 1 >= inst.k(), "window keeps at least k elements");
        Instance window = inst.slice(lo, j);
        SolveResult sub = fptas_ssr(window, inner, options);
        KSPLIT_CHECK(sub.solution.has_value(), "windows of size >= k are feasible");
        best.stats.merge(sub.stats);

        SetFamily mapped = sub.solution->sets;
        for (IndexSet& s : mapped)
            for (u32& i : s) i += lo - 1;
        Solution shifted = make_solution(inst, std::move(mapped));
        KSPLIT_CHECK(shifted.ratio == sub.solution->ratio,
                     "shifting indices must preserve the ratio");
        if (!best.solution || shifted.ratio < best.solution->ratio)
            best.solution = std::move(shifted);
        if (options.stop_at_ratio_one && best.solution->ratio == ExtendedRational::one()) break;
    }
    KSPLIT_CHECK(best.solution.has_value(), "instances with k <= n always admit a solution");
    KSPLIT_CHECK(check_feasible(*best.solution, inst, ProblemKind::Ssr).ok,
                 "windowed scheme output must be feasible for the full instance");
    return best;
}

}  // namespace ksplit
