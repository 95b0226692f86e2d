#pragma once

#include <cstring>
#include <span>
#include <vector>

#include "ksplit/instance.hpp"
#include "ksplit/solution.hpp"

namespace ksplit {

// ---------------------------------------------------------------------------
// Difference-vector dynamic programming.
//
// A state is (D, V): the sorted vector of differences d_j = sum(S1) - sum(Sj)
// for j = 2..k, and a validity bit per entry recording whether S_j already
// holds an element past the anchor p. Rows are sparse maps from (D, V) to one
// surviving tuple; the restricted subset-sum-ratio solver resolves cell
// conflicts by larger sum(S1), the partitioning variant keeps the incumbent.
// Cells carry a compact parent trace instead of set copies; sets are rebuilt
// only for tuples that win.
// ---------------------------------------------------------------------------

namespace detail {

/// Transition filter: moving an element of weight w into a set at difference
/// d is pruned iff d - w <= -threshold, i.e. w - d >= threshold.
struct PruneBound {
    u128 threshold = 0;

    static PruneBound integer(u128 bound) { return {bound}; }

    /// ceil(num/den), saturating. Exact: an integer gap g satisfies
    /// g >= num/den iff g >= ceil(num/den).
    static PruneBound rational(u128 num, u128 den) {
        KSPLIT_CHECK(den > 0, "prune bound denominator");
        return {ceil_div_u128(num, den)};
    }

    bool prunes(i64 diff, u64 weight) const {
        i128 gap = static_cast<i128>(weight) - static_cast<i128>(diff);
        return gap >= 0 && static_cast<u128>(gap) >= threshold;
    }
};

/// Adds weight w to the set at diff position `pos` (0-based among d_2..d_k),
/// restoring sorted order by bubbling left; validity bits travel with their
/// diffs. `hook(a, b)` mirrors each adjacent swap for callers tracking sets.
/// Returns the final position of the updated entry.
template <class SwapHook>
inline u32 move_into_set(std::span<i64> diffs, u32& vmask, u32 pos, u64 w, bool mark,
                         SwapHook&& hook) {
    diffs[pos] -= static_cast<i64>(w);
    if (mark) vmask |= u32(1) << pos;
    while (pos > 0 && diffs[pos - 1] > diffs[pos]) {
        std::swap(diffs[pos - 1], diffs[pos]);
        u32 a = (vmask >> (pos - 1)) & 1u, b = (vmask >> pos) & 1u;
        if (a != b) vmask ^= (u32(3) << (pos - 1));
        hook(pos - 1, pos);
        --pos;
    }
    return pos;
}

/// Adds weight w to the first set: every difference grows by w.
inline void move_into_first(std::span<i64> diffs, u64& first_sum, u64 w) {
    for (i64& d : diffs) d += static_cast<i64>(w);
    first_sum += w;
}

/// Refcounted arena of (parent, element, target-set) trace nodes. Skip
/// transitions share their parent's node, so nodes exist only for actual
/// element placements. Unreachable chains are reclaimed through a free list.
class TraceArena {
public:
    static constexpr u32 kRoot = 0;
    struct Move {
        u32 elem;
        u32 target;  // 1 = first set, j >= 2 = diff position j-2 at the time
    };

    TraceArena() { nodes_.push_back({kNone, 0, 0, 1}); }

    u32 add(u32 parent, u32 elem, u32 target) {
        addref(parent);
        Node node{parent, elem, static_cast<std::uint16_t>(target), 1};
        if (!free_.empty()) {
            u32 id = free_.back();
            free_.pop_back();
            nodes_[id] = node;
            return id;
        }
        KSPLIT_CHECK(nodes_.size() < kNone, "trace arena exhausted");
        nodes_.push_back(node);
        return static_cast<u32>(nodes_.size() - 1);
    }

    void addref(u32 id) {
        if (id != kRoot) ++nodes_[id].refs;
    }

    void release(u32 id) {
        while (id != kRoot && --nodes_[id].refs == 0) {
            free_.push_back(id);
            id = nodes_[id].parent;
        }
    }

    void path(u32 id, std::vector<Move>& out) const {
        out.clear();
        for (; id != kRoot; id = nodes_[id].parent)
            out.push_back({nodes_[id].elem, nodes_[id].target});
        std::reverse(out.begin(), out.end());
    }

private:
    struct Node {
        u32 parent;
        u32 elem;
        std::uint16_t target;
        u32 refs;
    };
    static constexpr u32 kNone = 0xffffffffu;

    std::vector<Node> nodes_;
    std::vector<u32> free_;
};

/// One sparse DP row: open-addressed map from (diffs, validity) to the
/// surviving cell. Iteration follows insertion order, which keeps every
/// downstream choice deterministic regardless of hashing.
class DpRow {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    static constexpr u32 kNoTrace = 0xffffffffu;

    void reset(u32 dims, bool track_sum, bool sum_conflict) {
        dims_ = dims;
        track_sum_ = track_sum;
        sum_conflict_ = sum_conflict;
        clear();
        if (table_.size() < 64) table_.assign(64, -1);
    }

    void clear() {
        keys_.clear();
        vmasks_.clear();
        sums_.clear();
        traces_.clear();
        std::fill(table_.begin(), table_.end(), -1);
        count_ = 0;
    }

    std::size_t size() const { return count_; }

    std::span<const i64> key(std::size_t c) const {
        return {keys_.data() + c * dims_, dims_};
    }
    u32 vmask(std::size_t c) const { return vmasks_[c]; }
    u64 first_sum(std::size_t c) const { return track_sum_ ? sums_[c] : 0; }
    u32 trace(std::size_t c) const { return traces_[c]; }
    void set_trace(std::size_t c, u32 id) { traces_[c] = id; }

    /// Inserts or resolves a conflict. Returns the cell index when the tuple
    /// is stored (newly or replacing the incumbent), npos when rejected.
    /// *evicted receives the replaced cell's trace id, kNoTrace otherwise.
    std::size_t upsert(std::span<const i64> key, u32 vm, u64 sum, u32* evicted) {
        *evicted = kNoTrace;
        if ((count_ + 1) * 10 > table_.size() * 7) grow();
        const std::size_t mask = table_.size() - 1;
        std::size_t slot = hash_key(key, vm) & mask;
        while (true) {
            std::int64_t c = table_[slot];
            if (c < 0) {
                keys_.insert(keys_.end(), key.begin(), key.end());
                vmasks_.push_back(vm);
                if (track_sum_) sums_.push_back(sum);
                traces_.push_back(kNoTrace);
                table_[slot] = static_cast<std::int64_t>(count_);
                return count_++;
            }
            auto idx = static_cast<std::size_t>(c);
            if (vmasks_[idx] == vm &&
                std::memcmp(keys_.data() + idx * dims_, key.data(), dims_ * sizeof(i64)) == 0) {
                if (sum_conflict_ && sum > sums_[idx]) {
                    sums_[idx] = sum;
                    *evicted = traces_[idx];
                    return idx;
                }
                return npos;  // incumbent stays (equal sums keep the first writer)
            }
            slot = (slot + 1) & mask;
        }
    }

private:
    static u64 hash_key(std::span<const i64> key, u32 vm) {
        u64 h = 0x9e3779b97f4a7c15ULL ^ (static_cast<u64>(vm) * 0xff51afd7ed558ccdULL);
        for (i64 d : key) {
            h ^= static_cast<u64>(d);
            h *= 0xbf58476d1ce4e5b9ULL;
            h ^= h >> 29;
        }
        return h;
    }

    void grow() {
        std::size_t cap = table_.size() * 2;
        table_.assign(cap, -1);
        const std::size_t mask = cap - 1;
        for (std::size_t idx = 0; idx < count_; ++idx) {
            std::size_t slot = hash_key(key(idx), vmasks_[idx]) & mask;
            while (table_[slot] >= 0) slot = (slot + 1) & mask;
            table_[slot] = static_cast<std::int64_t>(idx);
        }
    }

    u32 dims_ = 0;
    bool track_sum_ = false;
    bool sum_conflict_ = false;
    std::vector<i64> keys_;
    std::vector<u32> vmasks_;
    std::vector<u64> sums_;
    std::vector<u32> traces_;
    std::vector<std::int64_t> table_;
    std::size_t count_ = 0;
};

struct DpConfig {
    u32 k = 2;                // number of sets built by this DP
    u32 p = 1;                // anchor: first set's forced maximum element
    PruneBound prune;         // 2Q for the exact solver, 2Q/delta for partitioning
    bool allow_skip = true;   // false: every element joins some set
    bool sum_conflict = true; // false: cell conflicts keep the incumbent
    SolveOptions options;
};

class DifferenceDp {
public:
    DifferenceDp(std::span<const u64> values, DpConfig cfg)
        : values_(values), cfg_(cfg), dims_(cfg.k - 1) {
        KSPLIT_CHECK(cfg_.k >= 1 && cfg_.k <= 17, "dp supports 1 <= k <= 17 sets");
        KSPLIT_CHECK(cfg_.p >= 1 && cfg_.p + cfg_.k <= values_.size() + 1,
                     "dp anchor out of range");
        for (u32 i = 0; i < cfg_.p; ++i) prefix_sum_ += values_[i];
    }

    void run() {
        stats_.dp_runs = 1;
        const u32 q = static_cast<u32>(values_.size());
        prev_.reset(dims_, cfg_.sum_conflict, cfg_.sum_conflict);
        cur_.reset(dims_, cfg_.sum_conflict, cfg_.sum_conflict);

        const u64 anchor_value = values_[cfg_.p - 1];
        scratch_.assign(dims_, static_cast<i64>(anchor_value));
        u32 evicted;
        std::size_t c0 = prev_.upsert(scratch_, 0, anchor_value, &evicted);
        prev_.set_trace(c0, TraceArena::kRoot);
        check_row(prev_.size());

        for (u32 i = 1; i <= q; ++i) {
            if (i == cfg_.p) continue;  // the anchor is already in the first set
            cfg_.options.check_deadline();
            const u64 w = values_[i - 1];
            cur_.clear();
            for (std::size_t c = 0; c < prev_.size(); ++c) {
                auto key = prev_.key(c);
                u32 vm = prev_.vmask(c);
                u64 fs = prev_.first_sum(c);
                u32 tr = prev_.trace(c);
                if (cfg_.allow_skip) store(key, vm, fs, tr, 0, 0);
                if (i < cfg_.p) {
                    scratch_.assign(key.begin(), key.end());
                    u64 fs2 = fs;
                    move_into_first(scratch_, fs2, w);
                    store(scratch_, vm, fs2, tr, i, 1);
                }
                for (u32 pos = 0; pos < dims_; ++pos) {
                    if (cfg_.prune.prunes(key[pos], w)) continue;
                    scratch_.assign(key.begin(), key.end());
                    u32 vm2 = vm;
                    move_into_set(std::span<i64>(scratch_), vm2, pos, w, i > cfg_.p,
                                  [](u32, u32) {});
                    store(scratch_, vm2, fs, tr, i, pos + 2);
                }
            }
            for (std::size_t c = 0; c < prev_.size(); ++c) arena_.release(prev_.trace(c));
            std::swap(prev_, cur_);
            check_row(prev_.size());
        }

        const u32 full = (u32(1) << dims_) - 1;
        survivors_.clear();
        for (std::size_t c = 0; c < prev_.size(); ++c)
            if (prev_.vmask(c) == full) survivors_.push_back(c);
    }

    std::span<const std::size_t> survivors() const { return survivors_; }
    u64 survivor_first_sum(std::size_t c) const { return prev_.first_sum(c); }
    std::span<const i64> survivor_diffs(std::size_t c) const { return prev_.key(c); }
    const SolveStats& stats() const { return stats_; }
    u64 input_prefix_sum() const { return prefix_sum_; }

    /// Rebuilds the index sets of a surviving cell by replaying its trace
    /// through the same move primitive, then verifies the replayed state
    /// against the stored key.
    SetFamily reconstruct(std::size_t c) const {
        std::vector<TraceArena::Move> moves;
        arena_.path(prev_.trace(c), moves);

        SetFamily sets(cfg_.k);
        sets[0].push_back(cfg_.p);
        std::vector<i64> diffs(dims_, static_cast<i64>(values_[cfg_.p - 1]));
        u32 vm = 0;
        u64 fs = values_[cfg_.p - 1];
        for (const auto& mv : moves) {
            const u64 w = values_[mv.elem - 1];
            if (mv.target == 1) {
                sets[0].push_back(mv.elem);
                move_into_first(diffs, fs, w);
            } else {
                u32 pos = mv.target - 2;
                sets[pos + 1].push_back(mv.elem);
                move_into_set(std::span<i64>(diffs), vm, pos, w, mv.elem > cfg_.p,
                              [&](u32 a, u32 b) { std::swap(sets[a + 1], sets[b + 1]); });
            }
        }
        auto key = prev_.key(c);
        KSPLIT_CHECK(std::equal(diffs.begin(), diffs.end(), key.begin(), key.end()),
                     "replayed diffs must match the stored key");
        KSPLIT_CHECK(vm == prev_.vmask(c), "replayed validity must match the stored key");
        KSPLIT_CHECK(!cfg_.sum_conflict || fs == prev_.first_sum(c),
                     "replayed first-set sum must match the stored cell");
        return sets;
    }

private:
    void store(std::span<const i64> key, u32 vm, u64 fs, u32 parent, u32 elem, u32 target) {
        for (u32 d = 0; d < dims_; ++d) {
            KSPLIT_CHECK(key[d] <= static_cast<i64>(prefix_sum_),
                         "difference above the prefix-sum ceiling");
            KSPLIT_CHECK(!cfg_.prune.prunes(key[d], 0),
                         "difference at or below the prune floor");
            KSPLIT_CHECK(d == 0 || key[d - 1] <= key[d], "difference vector unsorted");
        }
        u32 evicted;
        std::size_t idx = cur_.upsert(key, vm, fs, &evicted);
        if (idx == DpRow::npos) return;
        u32 id;
        if (target == 0) {
            arena_.addref(parent);
            id = parent;
        } else {
            id = arena_.add(parent, elem, target);
        }
        cur_.set_trace(idx, id);
        if (evicted != DpRow::kNoTrace) arena_.release(evicted);
    }

    /// Row-size invariant: with differences confined to (-2B, B] for the
    /// bound scale B, sorted keys with validity bits cannot exceed
    /// (3B)^(k-1) * 2^(k-1) states.
    void check_row(std::size_t count) {
        ++stats_.dp_state_checks;
        if (count > stats_.dp_peak_states) stats_.dp_peak_states = count;
        u128 scale = prefix_sum_;
        u128 half = ceil_div_u128(cfg_.prune.threshold, 2);
        if (half > scale) scale = half;
        u128 bound = 1;
        u128 base = sat_mul_u128(3, scale);
        for (u32 d = 0; d < dims_; ++d) bound = sat_mul_u128(bound, base);
        bound = sat_mul_u128(bound, u128(1) << dims_);
        KSPLIT_CHECK(static_cast<u128>(count) <= bound, "dp row exceeds the state-space bound");
    }

    std::span<const u64> values_;
    DpConfig cfg_;
    u32 dims_;
    u64 prefix_sum_ = 0;
    DpRow prev_, cur_;
    TraceArena arena_;
    std::vector<i64> scratch_;
    std::vector<std::size_t> survivors_;
    SolveStats stats_;
};

}  // namespace detail

/// State of one DP key/cell after applying a single transition; the
/// test-facing form of the update helper shared by both solvers.
struct DpMove {
    std::vector<i64> diffs;
    std::vector<bool> validity;
    u64 first_sum = 0;
};

/// Adds an element of weight `value` to set `target_set` (1-based; 1 is the
/// anchor set). For target sets >= 2, `beyond_anchor` marks whether the
/// element's index exceeds the anchor p; the updated difference re-sorts with
/// its validity bit in lock-step.
inline DpMove apply_dp_move(DpMove state, u32 target_set, u64 value, bool beyond_anchor) {
    KSPLIT_CHECK(state.diffs.size() == state.validity.size(), "diff/validity size mismatch");
    KSPLIT_CHECK(target_set >= 1 && target_set <= state.diffs.size() + 1, "target set out of range");
    if (target_set == 1) {
        detail::move_into_first(state.diffs, state.first_sum, value);
        return state;
    }
    u32 vm = 0;
    for (std::size_t b = 0; b < state.validity.size(); ++b)
        if (state.validity[b]) vm |= u32(1) << b;
    detail::move_into_set(std::span<i64>(state.diffs), vm, target_set - 2, value, beyond_anchor,
                          [](u32, u32) {});
    for (std::size_t b = 0; b < state.validity.size(); ++b)
        state.validity[b] = (vm >> b) & 1u;
    return state;
}

/// The restricted subset-sum-ratio DP as a standalone operation: returns
/// every surviving tuple (all validity bits set) reconstructed into index
/// sets, in deterministic row order. `prune` is 2Q for exact use.
inline std::vector<SetFamily> dp_ssr_restricted(std::span<const u64> values, u32 k, u32 p,
                                                u128 prune, SolveStats* stats = nullptr,
                                                SolveOptions options = {}) {
    detail::DpConfig cfg{.k = k,
                         .p = p,
                         .prune = detail::PruneBound::integer(prune),
                         .allow_skip = true,
                         .sum_conflict = true,
                         .options = options};
    detail::DifferenceDp dp(values, cfg);
    dp.run();
    if (stats) stats->merge(dp.stats());
    std::vector<SetFamily> out;
    out.reserve(dp.survivors().size());
    for (std::size_t c : dp.survivors()) out.push_back(dp.reconstruct(c));
    return out;
}

}  // namespace ksplit
