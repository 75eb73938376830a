#include "efx/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "efx/brute.hpp"
#include "efx/dp.hpp"
#include "efx/fairness.hpp"
#include "efx/generators.hpp"
#include "efx/io.hpp"
#include "efx/kernel.hpp"
#include "efx/matching.hpp"
#include "efx/types_dp.hpp"

namespace efx {

namespace {

constexpr Value kEnumGuard = 10'000'000;  // cap on table targets inside the enumerators

void pass(SuiteReport& rep) {
    ++rep.instances;
    ++rep.agreements;
}

void fail(SuiteReport& rep, const Instance& inst, const std::string& detail) {
    ++rep.instances;
    ++rep.mismatches;
    if (rep.first_mismatch.empty())
        rep.first_mismatch = serialize_instance(inst) + " :: " + detail;
}

void record(SuiteReport& rep, const Instance& inst, bool ok, const char* what, Cost want,
            Cost got) {
    if (ok) {
        pass(rep);
        return;
    }
    fail(rep, inst,
         std::string(what) + ": expected " + std::to_string(want) + ", got " +
             std::to_string(got));
}

// ---------------------------------------------------------------------------
// dp-grid: every two-agent instance with m <= 4 items, values <= 3, per-agent
// item costs <= 3. The value-vector solver must match exhaustive search on
// cost and on the lexicographic tie-break everywhere.
// ---------------------------------------------------------------------------

SuiteReport suite_dp_grid() {
    SuiteReport rep;
    rep.suite = "dp-grid";
    BruteOptions bopt;
    bopt.collect_stats = false;
    DpOptions dopt;
    dopt.collect_stats = false;

    Instance inst;
    inst.n = 2;
    for (int m = 0; m <= 4; ++m) {
        inst.values.assign(m, 0);
        inst.cost_model =
            GeneralCosts{std::vector<std::vector<Cost>>(2, std::vector<Cost>(m, 0))};
        auto& rows = std::get<GeneralCosts>(inst.cost_model).agent_costs;
        for (;;) {
            for (;;) {
                const SolveResult want = solve_brute(inst, bopt);
                const SolveResult got = solve_value_vector_dp(inst, dopt);
                record(rep, inst,
                       got.cost == want.cost &&
                           got.allocation.owner == want.allocation.owner,
                       "dp vs search", want.cost, got.cost);
                int d = 0;
                for (; d < 2 * m; ++d) {
                    Cost& c = rows[d % 2][d / 2];
                    if (++c <= 3) break;
                    c = 0;
                }
                if (d == 2 * m) break;
            }
            int d = 0;
            for (; d < m; ++d) {
                if (++inst.values[d] <= 3) break;
                inst.values[d] = 0;
            }
            if (d == m) break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// dp-random: seeded random instances, n in {2,3}, m <= 6, values <= 6, costs
// <= 9, alternating general and factor cost models. For n = 2 the sparse
// fallback path must agree as well.
// ---------------------------------------------------------------------------

SuiteReport suite_dp_random(std::uint64_t seed) {
    SuiteReport rep;
    rep.suite = "dp-random";
    std::mt19937_64 master(seed);
    BruteOptions bopt;
    bopt.collect_stats = false;
    DpOptions dopt;
    dopt.collect_stats = false;
    DpOptions dgen = dopt;
    dgen.force_general_path = true;

    for (int t = 0; t < 500; ++t) {
        const int n = 2 + static_cast<int>(uniform_upto(master, 1));
        const int m = static_cast<int>(uniform_upto(master, 6));
        const RandomCostKind kind =
            (t % 2 == 0) ? RandomCostKind::general : RandomCostKind::factor;
        const Instance inst = gen_random(n, m, 6, kind, 9, 0, master());
        const SolveResult want = solve_brute(inst, bopt);
        const SolveResult got = solve_value_vector_dp(inst, dopt);
        if (got.cost != want.cost || got.allocation.owner != want.allocation.owner) {
            record(rep, inst, false, "dp vs search", want.cost, got.cost);
            continue;
        }
        if (n == 2) {
            const SolveResult got2 = solve_value_vector_dp(inst, dgen);
            record(rep, inst,
                   got2.cost == want.cost &&
                       got2.allocation.owner == want.allocation.owner,
                   "sparse dp vs search", want.cost, got2.cost);
        } else {
            pass(rep);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// types: seeded factor instances with few distinct values (palette of at most
// 3), n <= 4, m <= 8, values <= 9, alphas <= 4. Type solver vs. search.
// ---------------------------------------------------------------------------

SuiteReport suite_types(std::uint64_t seed) {
    SuiteReport rep;
    rep.suite = "types";
    std::mt19937_64 master(seed);
    BruteOptions bopt;
    bopt.collect_stats = false;

    for (int t = 0; t < 300; ++t) {
        const int n = 1 + static_cast<int>(uniform_upto(master, 3));
        const int m = static_cast<int>(uniform_upto(master, 8));
        const int beta_cap = 1 + static_cast<int>(uniform_upto(master, 2));
        const Instance inst =
            gen_random(n, m, 9, RandomCostKind::factor, 4, beta_cap, master());
        const Cost want = solve_brute(inst, bopt).cost;
        const Cost got = solve_type_dp(inst).cost;
        record(rep, inst, got == want, "types vs search", want, got);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// matching: seeded instances with n >= m and positive values. Assignment
// solver vs. search, plus the structural fact that every EFx allocation here
// is singleton (each agent holds at most one item).
// ---------------------------------------------------------------------------

SuiteReport suite_matching(std::uint64_t seed) {
    SuiteReport rep;
    rep.suite = "matching";
    std::mt19937_64 master(seed);
    BruteOptions bopt;
    bopt.collect_stats = false;

    for (int t = 0; t < 200; ++t) {
        const int m = 2 + static_cast<int>(uniform_upto(master, 1));
        const int n = m + static_cast<int>(uniform_upto(master, 3));
        Instance inst;
        inst.n = n;
        inst.values.resize(m);
        for (Value& v : inst.values) v = 1 + uniform_upto(master, 8);
        GeneralCosts gc;
        gc.agent_costs.assign(n, std::vector<Cost>(m, 0));
        for (auto& row : gc.agent_costs)
            for (Cost& c : row) c = uniform_upto(master, 9);
        inst.cost_model = std::move(gc);

        const Cost want = solve_brute(inst, bopt).cost;
        const Cost got = solve_singleton_matching(inst).cost;
        if (got != want) {
            record(rep, inst, false, "matching vs search", want, got);
            continue;
        }
        if (t % 4 == 0) {
            MatchingOptions full;
            full.prune = false;
            const Cost got2 = solve_singleton_matching(inst, full).cost;
            if (got2 != want) {
                record(rep, inst, false, "unpruned matching vs search", want, got2);
                continue;
            }
        }
        bool all_singleton = true;
        std::vector<int> held(n);
        enumerate_efx(inst, 100'000'000, [&](const Allocation& alloc) {
            std::fill(held.begin(), held.end(), 0);
            for (int owner : alloc.owner)
                if (++held[owner] > 1) all_singleton = false;
        });
        if (!all_singleton) {
            fail(rep, inst, "an EFx allocation gives some agent two items");
            continue;
        }
        pass(rep);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// kernel: seeded wide instances (n in 10..40, m in {2,3}, positive values).
// The reduced instance must keep the optimum, respect the retained-size bound,
// and reduced optima must lift to EFx optima of the original.
// ---------------------------------------------------------------------------

SuiteReport suite_kernel(std::uint64_t seed) {
    SuiteReport rep;
    rep.suite = "kernel";
    std::mt19937_64 master(seed);
    BruteOptions bopt;
    bopt.collect_stats = false;

    for (int t = 0; t < 200; ++t) {
        const int n = 10 + static_cast<int>(uniform_upto(master, 30));
        const int m = 2 + static_cast<int>(uniform_upto(master, 1));
        Instance inst;
        inst.n = n;
        inst.values.resize(m);
        // zero-value items are deliberately excluded: with them the cheapest
        // agents for pairs need not contain an optimum owner set
        for (Value& v : inst.values) v = 1 + uniform_upto(master, 4);
        if (t % 4 == 3) {
            FactorCosts fc;
            fc.alphas.resize(n);
            for (Cost& a : fc.alphas) a = uniform_upto(master, 9);
            inst.cost_model = std::move(fc);
        } else {
            GeneralCosts gc;
            gc.agent_costs.assign(n, std::vector<Cost>(m, 0));
            for (auto& row : gc.agent_costs)
                for (Cost& c : row) c = uniform_upto(master, 9);
            inst.cost_model = std::move(gc);
        }

        const KernelMap kmap = kernelize(inst);
        const int bound = m * m + m * (m * (m - 1) / 2);
        if (static_cast<int>(kmap.retained.size()) > bound) {
            fail(rep, inst, "kernel retained " + std::to_string(kmap.retained.size()) +
                                " agents, bound " + std::to_string(bound));
            continue;
        }
        const Cost want = solve_brute(inst, bopt).cost;
        const SolveResult reduced = solve_brute(kmap.reduced, bopt);
        if (reduced.cost != want) {
            record(rep, inst, false, "reduced vs original optimum", want, reduced.cost);
            continue;
        }
        const LiftedAllocation lifted = lift_allocation(inst, kmap, reduced.allocation);
        if (!lifted.efx || allocation_cost(inst, lifted.allocation) != want) {
            fail(rep, inst, "lifted reduced optimum is not an EFx optimum of the original");
            continue;
        }
        pass(rep);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// thresholds: reduction families against independent enumerators, exhaustive
// search as the only solver.
// ---------------------------------------------------------------------------

std::vector<Value> random_multiset(std::mt19937_64& master, int lo_size, int hi_size,
                                   Value max_elem, bool evenize) {
    const int p = lo_size + static_cast<int>(uniform_upto(master, hi_size - lo_size));
    std::vector<Value> S(p);
    Value sum = 0;
    for (Value& s : S) {
        s = 1 + uniform_upto(master, max_elem - 1);
        sum += s;
    }
    if (evenize && sum % 2 != 0) S[0] += 1;
    return S;
}

SuiteReport suite_thresholds(std::uint64_t seed) {
    SuiteReport rep;
    rep.suite = "thresholds";
    std::mt19937_64 master(seed);
    BruteOptions bopt;
    bopt.collect_stats = false;

    for (int t = 0; t < 50; ++t) {
        const std::vector<Value> S = random_multiset(master, 2, 6, 6, true);
        const GeneratedInstance g = gen_from_partition(S);
        const bool yes = has_equal_sum_partition(S);
        const Cost opt = solve_brute(g.instance, bopt).cost;
        const bool within = opt <= static_cast<Cost>(g.threshold);
        if (within == yes)
            pass(rep);
        else
            fail(rep, g.instance,
                 "partition reduction: enumerator says " + std::to_string(yes) +
                     ", optimum " + std::to_string(opt) + " vs threshold " +
                     std::to_string(g.threshold));
    }

    for (int t = 0; t < 50; ++t) {
        const int bins = 2 + static_cast<int>(uniform_upto(master, 1));
        const Value B = 4 + uniform_upto(master, 4);
        Value rem = B * bins;
        const int pieces = 4 + static_cast<int>(uniform_upto(master, 2));
        std::vector<Value> sizes;
        for (int left = pieces; left > 1; --left) {
            const Value floor_needed = static_cast<Value>(left - 1);  // 1 per later piece
            const Value cap_later = static_cast<Value>(left - 1) * B;
            Value lo = rem > cap_later ? rem - cap_later : 1;
            Value hi = std::min(B, rem - floor_needed);
            sizes.push_back(lo + uniform_upto(master, hi - lo));
            rem -= sizes.back();
        }
        sizes.push_back(rem);
        const GeneratedInstance g = gen_from_bin_packing(sizes, B, bins);
        const bool yes = bin_packing_fits(sizes, B, bins);
        const Cost opt = solve_brute(g.instance, bopt).cost;
        const bool within = opt <= static_cast<Cost>(g.threshold);
        if (within == yes)
            pass(rep);
        else
            fail(rep, g.instance,
                 "bin packing reduction: enumerator says " + std::to_string(yes) +
                     ", optimum " + std::to_string(opt) + " vs threshold " +
                     std::to_string(g.threshold));
    }

    const Cost rhos[3] = {2, 3, 5};
    for (int t = 0; t < 50; ++t) {
        const std::vector<Value> S = random_multiset(master, 2, 6, 6, true);
        const Cost rho = rhos[t % 3];
        const GeneratedInstance g = gen_gadget_general(S, rho);
        const bool yes = has_equal_sum_partition(S);
        const Cost opt = solve_brute(g.instance, bopt).cost;
        const bool ok = yes ? (opt == 1) : (opt >= rho);
        if (ok)
            pass(rep);
        else
            fail(rep, g.instance,
                 "general-cost gadget: enumerator says " + std::to_string(yes) +
                     ", optimum " + std::to_string(opt) + ", separation " +
                     std::to_string(rho));
    }

    for (int t = 0; t < 50; ++t) {
        const std::vector<Value> S = random_multiset(master, 2, 6, 6, true);
        const GeneratedInstance g = gen_gadget_factor(S);
        const bool yes = has_equal_cardinality_partition(S);
        const Cost opt = solve_brute(g.instance, bopt).cost;
        const bool ok = opt >= static_cast<Cost>(g.threshold) &&
                        (!yes || opt == static_cast<Cost>(g.threshold));
        if (ok)
            pass(rep);
        else
            fail(rep, g.instance,
                 "factor-cost gadget: enumerator says " + std::to_string(yes) +
                     ", optimum " + std::to_string(opt) + " vs threshold " +
                     std::to_string(g.threshold));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// structural: over every value tuple with n <= 3 agents, m <= 5 items and
// values <= 4, every EFx allocation keeps the largest bundle gap within the
// largest item value and every bundle at or above the exact value floor.
// ---------------------------------------------------------------------------

SuiteReport suite_structural() {
    SuiteReport rep;
    rep.suite = "structural";
    for (int n = 1; n <= 3; ++n) {
        for (int m = 0; m <= 5; ++m) {
            Instance inst;
            inst.n = n;
            inst.values.assign(m, 0);
            inst.cost_model = FactorCosts{std::vector<Cost>(n, 0)};
            for (;;) {
                const Value max_item =
                    m == 0 ? 0 : *std::max_element(inst.values.begin(), inst.values.end());
                const Rational floor = efx_lower_bound(inst);
                std::uint64_t violations = 0;
                enumerate_efx(inst, 100'000'000, [&](const Allocation& alloc) {
                    if (max_gap(inst, alloc) > max_item) ++violations;
                    for (Value bv : bundle_values(inst, alloc))
                        if (value_below(bv, floor)) ++violations;
                });
                if (violations == 0)
                    pass(rep);
                else
                    fail(rep, inst,
                         std::to_string(violations) + " gap/floor violations over EFx set");
                int d = 0;
                for (; d < m; ++d) {
                    if (++inst.values[d] <= 4) break;
                    inst.values[d] = 0;
                }
                if (d == m) break;
            }
        }
    }
    return rep;
}

}  // namespace

bool has_equal_sum_partition(const std::vector<Value>& S) {
    unsigned __int128 sum = 0;
    for (Value s : S) sum += s;
    if (sum % 2 != 0) return false;
    if (sum / 2 > kEnumGuard)
        throw PreconditionError("equal-sum partition check: target sum too large");
    const Value target = static_cast<Value>(sum / 2);
    std::vector<char> reach(target + 1, 0);
    reach[0] = 1;
    for (Value s : S) {
        if (s > target) return false;  // one element already exceeds half the sum
        if (s == 0) continue;
        for (Value t = target; t >= s; --t) reach[t] = reach[t] | reach[t - s];
    }
    return reach[target] != 0;
}

bool has_equal_cardinality_partition(const std::vector<Value>& S) {
    const int m = static_cast<int>(S.size());
    if (m % 2 != 0) return false;
    unsigned __int128 sum = 0;
    for (Value s : S) sum += s;
    if (sum % 2 != 0) return false;
    if (sum / 2 > kEnumGuard)
        throw PreconditionError("equal-cardinality partition check: target sum too large");
    const Value target = static_cast<Value>(sum / 2);
    const int half = m / 2;
    // reach[k][t]: some k-element subset sums to t
    std::vector<std::vector<char>> reach(half + 1,
                                         std::vector<char>(static_cast<std::size_t>(target) + 1, 0));
    reach[0][0] = 1;
    for (Value s : S) {
        for (int k = half; k >= 1; --k) {
            if (s > target) break;
            for (Value t = target; t >= s; --t)
                reach[k][t] = reach[k][t] | reach[k - 1][t - s];
        }
    }
    return reach[half][target] != 0;
}

bool bin_packing_fits(const std::vector<Value>& sizes, Value capacity, int bins) {
    if (bins < 0) throw PreconditionError("bin packing check: negative bin count");
    std::vector<Value> desc = sizes;
    std::sort(desc.begin(), desc.end(), std::greater<Value>());
    // drop zero-size pieces: they fit anywhere (and even into zero bins)
    while (!desc.empty() && desc.back() == 0) desc.pop_back();
    if (desc.empty()) return true;
    if (bins == 0 || desc.front() > capacity) return false;
    std::vector<Value> load(bins, 0);
    const auto dfs = [&](const auto& self, std::size_t i) -> bool {
        if (i == desc.size()) return true;
        for (int b = 0; b < bins; ++b) {
            if (b > 0 && load[b] == load[b - 1]) continue;  // symmetric bin
            if (load[b] + desc[i] > capacity) continue;
            load[b] += desc[i];
            if (self(self, i + 1)) {
                load[b] -= desc[i];
                return true;
            }
            load[b] -= desc[i];
        }
        return false;
    };
    return dfs(dfs, 0);
}

const std::vector<std::string>& bench_suite_names() {
    static const std::vector<std::string> names = {
        "dp-grid", "dp-random", "types", "matching", "kernel", "thresholds", "structural"};
    return names;
}

SuiteReport run_bench_suite(const std::string& name, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    if (name == "dp-grid")
        rep = suite_dp_grid();
    else if (name == "dp-random")
        rep = suite_dp_random(seed);
    else if (name == "types")
        rep = suite_types(seed);
    else if (name == "matching")
        rep = suite_matching(seed);
    else if (name == "kernel")
        rep = suite_kernel(seed);
    else if (name == "thresholds")
        rep = suite_thresholds(seed);
    else if (name == "structural")
        rep = suite_structural();
    else
        throw PreconditionError("unknown bench suite: " + name);
    rep.wall_ms = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                                 std::chrono::steady_clock::now() - start)
                                                 .count());
    return rep;
}

}  // namespace efx
