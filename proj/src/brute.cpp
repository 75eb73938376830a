#include "efx/brute.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <thread>

#include "efx/fairness.hpp"

namespace efx {

namespace {

constexpr Value kNoMin = std::numeric_limits<Value>::max();

// n^m, saturating just above `cap` so callers can compare against a budget.
std::uint64_t pow_saturating(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

void flatten_costs(const Instance& inst, std::vector<Cost>& flat) {
    const int m = inst.item_count();
    flat.assign(static_cast<std::size_t>(inst.n) * m, 0);
    for (int a = 0; a < inst.n; ++a)
        for (int x = 0; x < m; ++x) flat[static_cast<std::size_t>(a) * m + x] = item_cost(inst, a, x);
}

// Walks every assignment of items [depth, m) given the partial bundle state,
// maintaining bundle values, bundle minima and accumulated cost in place.
// Reusable across calls via init(); the solve path keeps one per thread to
// keep per-call heap traffic off the differential-suite hot path.
struct Walker {
    const Instance* inst = nullptr;
    const Cost* flat_cost = nullptr;  // row-major n x m
    int n = 0;
    int m = 0;

    // prune state (enabled iff prune = true)
    bool prune = false;
    Rational floor{0, 1};
    std::vector<Value> suffix_total;  // suffix_total[i] = sum of values[i..m)

    std::vector<int> owner;
    std::vector<Value> bv;
    std::vector<Value> bmin;
    std::uint64_t leaves = 0;
    std::uint64_t efx_found = 0;

    // best-so-far for solve mode; first strict improvement wins, which in
    // lexicographic visiting order implements the smallest-owner tie-break
    bool track_best = false;
    Cost best_cost = 0;
    bool have_best = false;
    std::vector<int> best_owner;
    Cost cost = 0;

    const std::function<void(const Allocation&)>* visit = nullptr;

    void init(const Instance& i, const std::vector<Cost>& fc) {
        inst = &i;
        flat_cost = fc.data();
        n = i.n;
        m = i.item_count();
        prune = false;
        track_best = false;
        leaves = 0;
        efx_found = 0;
        best_cost = 0;
        have_best = false;
        cost = 0;
        visit = nullptr;
        owner.assign(m, 0);
        bv.assign(n, 0);
        bmin.assign(n, kNoMin);
    }

    void enable_prune() {
        prune = true;
        floor = efx_lower_bound(*inst);
        suffix_total.assign(m + 1, 0);
        for (int i = m - 1; i >= 0; --i) suffix_total[i] = suffix_total[i + 1] + inst->values[i];
    }

    bool leaf_is_efx() const {
        if (n == 1) return true;
        // min and second-min of bundle values over all agents
        Value min1 = kNoMin, min2 = kNoMin;
        int min1_count = 0;
        for (int a = 0; a < n; ++a) {
            Value v = bv[a];
            if (v < min1) {
                min2 = min1;
                min1 = v;
                min1_count = 1;
            } else if (v == min1) {
                ++min1_count;
            } else if (v < min2) {
                min2 = v;
            }
        }
        for (int a = 0; a < n; ++a) {
            if (bmin[a] == kNoMin) continue;  // empty bundles are never strongly envied
            Value others_min = (bv[a] > min1 || min1_count > 1) ? min1 : min2;
            if (others_min < bv[a] - bmin[a]) return false;
        }
        return true;
    }

    bool prune_cuts(int depth) const {
        // No EFx completion can exist if the remaining value cannot lift every
        // bundle to the floor. Exact rational comparison in 128-bit.
        unsigned __int128 need = 0;
        const unsigned __int128 num = floor.num;
        const unsigned __int128 den = floor.den;
        for (int a = 0; a < n; ++a) {
            unsigned __int128 scaled = den * static_cast<unsigned __int128>(bv[a]);
            if (scaled < num) need += num - scaled;
        }
        return need > den * static_cast<unsigned __int128>(suffix_total[depth]);
    }

    void run(int depth) {
        if (depth == m) {
            ++leaves;
            if (!leaf_is_efx()) return;
            ++efx_found;
            if (track_best) {
                if (!have_best || cost < best_cost) {
                    have_best = true;
                    best_cost = cost;
                    best_owner = owner;
                }
            }
            if (visit) (*visit)(Allocation{owner});
            return;
        }
        if (prune && prune_cuts(depth)) return;
        const Value v = inst->values[depth];
        for (int a = 0; a < n; ++a) {
            owner[depth] = a;
            const Value saved_min = bmin[a];
            bv[a] += v;
            if (v < bmin[a]) bmin[a] = v;
            cost += flat_cost[static_cast<std::size_t>(a) * m + depth];
            run(depth + 1);
            cost -= flat_cost[static_cast<std::size_t>(a) * m + depth];
            bv[a] -= v;
            bmin[a] = saved_min;
        }
    }

    // Restricts item 0 to [first, last) for thread partitioning.
    void run_top_range(int first, int last) {
        if (m == 0) {
            run(0);
            return;
        }
        const Value v = inst->values[0];
        for (int a = first; a < last; ++a) {
            owner[0] = a;
            const Value saved_min = bmin[a];
            bv[a] += v;
            if (v < bmin[a]) bmin[a] = v;
            cost += flat_cost[static_cast<std::size_t>(a) * m];
            run(1);
            cost -= flat_cost[static_cast<std::size_t>(a) * m];
            bv[a] -= v;
            bmin[a] = saved_min;
        }
    }
};

void check_budget(const Instance& inst, std::uint64_t budget) {
    validate_instance(inst);
    std::uint64_t space =
        pow_saturating(inst.n, static_cast<std::uint64_t>(inst.item_count()), budget);
    if (space > budget)
        throw BudgetError("assignment space n^m exceeds the enumeration budget");
}

}  // namespace

SolveResult solve_brute(const Instance& inst, const BruteOptions& opts) {
    std::chrono::steady_clock::time_point start;
    if (opts.collect_stats) start = std::chrono::steady_clock::now();
    check_budget(inst, opts.budget);
    static thread_local std::vector<Cost> flat;
    flatten_costs(inst, flat);
    const int m = inst.item_count();

    SolveResult result;
    result.algorithm = "brute";
    bool have = false;
    std::uint64_t leaves = 0, efx_found = 0;

    const int threads = std::max(1, std::min(opts.threads, m == 0 ? 1 : inst.n));
    if (threads == 1) {
        static thread_local Walker w;
        w.init(inst, flat);
        w.track_best = true;
        if (opts.lower_bound_prune) w.enable_prune();
        w.run_top_range(0, inst.n);
        leaves = w.leaves;
        efx_found = w.efx_found;
        if (w.have_best) {
            have = true;
            result.cost = w.best_cost;
            result.allocation.owner = w.best_owner;
        }
    } else {
        struct Share {
            bool have = false;
            Cost cost = 0;
            std::vector<int> owner;
            std::uint64_t leaves = 0;
            std::uint64_t efx_found = 0;
        };
        std::vector<Share> shares(threads);
        std::vector<std::thread> pool;
        // pool threads see their own (empty) thread_local `flat`, so hand the
        // filled one through an explicit reference
        const std::vector<Cost>& flat_ref = flat;
        for (int t = 0; t < threads; ++t) {
            int first = static_cast<int>(static_cast<std::int64_t>(inst.n) * t / threads);
            int last = static_cast<int>(static_cast<std::int64_t>(inst.n) * (t + 1) / threads);
            pool.emplace_back([&inst, &opts, &flat_ref, &share = shares[t], first, last] {
                Walker w;
                w.init(inst, flat_ref);
                w.track_best = true;
                if (opts.lower_bound_prune) w.enable_prune();
                w.run_top_range(first, last);
                share.have = w.have_best;
                share.cost = w.best_cost;
                share.owner = std::move(w.best_owner);
                share.leaves = w.leaves;
                share.efx_found = w.efx_found;
            });
        }
        for (auto& th : pool) th.join();
        for (Share& s : shares) {
            leaves += s.leaves;
            efx_found += s.efx_found;
            // threads cover disjoint top-digit ranges in ascending order, so the
            // first (lowest-range) strict winner is the lexicographic tie-break
            if (s.have && (!have || s.cost < result.cost)) {
                have = true;
                result.cost = s.cost;
                result.allocation.owner = std::move(s.owner);
            }
        }
    }
    if (!have) throw InternalError("no EFx allocation found by exhaustive search");
    if (opts.collect_stats) {
        result.stats["states"] = leaves;
        result.stats["efx_found"] = efx_found;
        result.stats["wall_us"] = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() -
                                                                  start)
                .count());
    }
    return result;
}

void enumerate_efx(const Instance& inst, std::uint64_t budget,
                   const std::function<void(const Allocation&)>& visit) {
    check_budget(inst, budget);
    std::vector<Cost> flat;
    flatten_costs(inst, flat);
    Walker w;
    w.init(inst, flat);
    w.visit = &visit;
    w.run_top_range(0, inst.n);
}

std::vector<Allocation> enumerate_efx(const Instance& inst, std::uint64_t budget) {
    std::vector<Allocation> out;
    enumerate_efx(inst, budget, [&out](const Allocation& a) { out.push_back(a); });
    return out;
}

}  // namespace efx
