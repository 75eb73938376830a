#include "efx/dp.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <limits>
#include <map>
#include <unordered_map>

#include "efx/fairness.hpp"

namespace efx {

namespace {

constexpr Cost kInf = std::numeric_limits<Cost>::max();

std::uint64_t elapsed_us(std::chrono::steady_clock::time_point start) {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::microseconds>(
                                          std::chrono::steady_clock::now() - start)
                                          .count());
}

// Dedup table over value vectors. States live in an external flat arena
// (stride n, insertion order). Keys are mixed-radix packed into uint64 when
// (vtotal+1)^n fits; otherwise an ordered map on the full vector is used.
struct VecTable {
    int n;
    bool packed = false;
    std::vector<Value> pow;  // pow[j] = (vtotal+1)^j
    std::vector<Value>* arena;
    std::unordered_map<std::uint64_t, std::uint32_t> by_key;
    std::map<std::vector<Value>, std::uint32_t> by_vec;

    VecTable(int n_, Value vtotal, std::vector<Value>* arena_) : n(n_), arena(arena_) {
        Value base = vtotal + 1;  // vtotal < 2^64 - 1 is implied by validation headroom
        pow.assign(n, 1);
        packed = true;
        for (int j = 1; j < n && packed; ++j) {
            if (pow[j - 1] > std::numeric_limits<Value>::max() / base) packed = false;
            else pow[j] = pow[j - 1] * base;
        }
        if (packed && n > 0) {
            // one more headroom check: max key = sum y_j * pow[j] <= base^n - 1
            if (pow[n - 1] > std::numeric_limits<Value>::max() / base) packed = false;
        }
    }

    std::size_t size() const { return arena->size() / std::max(1, n); }

    std::uint32_t insert(const Value* y) {
        std::uint32_t next = static_cast<std::uint32_t>(size());
        if (packed) {
            std::uint64_t key = 0;
            for (int j = 0; j < n; ++j) key += y[j] * pow[j];
            auto [it, fresh] = by_key.try_emplace(key, next);
            if (!fresh) return it->second;
        } else {
            std::vector<Value> key(y, y + n);
            auto [it, fresh] = by_vec.try_emplace(std::move(key), next);
            if (!fresh) return it->second;
        }
        arena->insert(arena->end(), y, y + n);
        return next;
    }
};

bool layer_feasible(const FeasibilityFrontier::Layer& layer, int n, const Value* z) {
    Value zsum = 0;
    for (int k = 0; k < n; ++k) {
        if (z[k] > layer.coord_max[k]) return false;
        zsum += z[k];
    }
    if (zsum > layer.sum) return false;
    if (zsum == 0) return true;  // layers always hold at least one state
    const std::size_t count = layer.count(n);
    for (std::size_t s = 0; s < count; ++s) {
        const Value* y = layer.flat.data() + s * n;
        bool ok = true;
        for (int k = 0; k < n; ++k)
            if (y[k] < z[k]) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

struct LowerBoundPrune {
    bool enabled = false;
    Rational floor{0, 1};

    // True when the remaining unassigned value cannot lift every coordinate to the floor.
    bool cuts(const Value* y, int n, Value remaining) const {
        if (!enabled) return false;
        unsigned __int128 need = 0;
        const unsigned __int128 num = floor.num, den = floor.den;
        for (int k = 0; k < n; ++k) {
            unsigned __int128 scaled = den * static_cast<unsigned __int128>(y[k]);
            if (scaled < num) need += num - scaled;
        }
        return need > den * static_cast<unsigned __int128>(remaining);
    }
};

// Items in descending (value, then original index) order; the complement of
// any processed prefix is exactly a suffix of the ascending value multiset.
void descending_items(const Instance& inst, std::vector<int>& order) {
    order.resize(inst.values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (inst.values[a] != inst.values[b]) return inst.values[a] > inst.values[b];
        return a < b;
    });
}

SolveResult empty_result(const char* algorithm, bool collect_stats) {
    SolveResult r;
    r.cost = 0;
    r.algorithm = algorithm;
    if (collect_stats) {
        r.stats["states"] = 0;
        r.stats["frontier_states"] = 0;
    }
    return r;
}

void verify_reconstruction(const Instance& inst, const Allocation& alloc, Cost opt) {
    if (allocation_cost(inst, alloc) != opt)
        throw InternalError("reconstructed allocation cost disagrees with the table optimum");
    if (!is_efx(inst, alloc))
        throw InternalError(
            "reconstructed minimum-cost allocation is not EFx; table states were insufficient");
}

// Same checks as verify_reconstruction, specialized to n == 2 with no heap
// traffic; the grid suite funnels tens of millions of calls through here.
void verify_dense2(const Instance& inst, const Allocation& alloc, Cost opt) {
    const int m = inst.item_count();
    Cost total = 0;
    Value bv[2] = {0, 0};
    Value bmin[2] = {0, 0};
    bool used[2] = {false, false};
    for (int x = 0; x < m; ++x) {
        const int a = alloc.owner[x];
        total += item_cost(inst, a, x);
        const Value v = inst.values[x];
        bv[a] += v;
        if (!used[a] || v < bmin[a]) bmin[a] = v;
        used[a] = true;
    }
    if (total != opt)
        throw InternalError("reconstructed allocation cost disagrees with the table optimum");
    for (int i = 0; i < 2; ++i) {
        const int j = 1 - i;
        if (used[j] && bv[i] < bv[j] - bmin[j])
            throw InternalError(
                "reconstructed minimum-cost allocation is not EFx; table states were insufficient");
    }
}

// ---------------------------------------------------------------------------
// General path: sparse per-layer state maps, any n. A state is the value
// vector plus its obligation, stored as one (n+1)-coordinate key.
// ---------------------------------------------------------------------------

struct GeneralDpLayer {
    std::vector<Value> flat;  // states, stride n + 1 (vector then obligation)
    std::vector<Cost> cost;
    std::vector<char> dead;  // obligation not coverable by the remaining items
    std::vector<Cost> completion;
    std::size_t count(int stride) const { return stride == 0 ? 0 : flat.size() / stride; }
};

struct GeneralDpEdge {
    std::uint32_t src = 0;
    std::uint32_t dst = 0;
    std::uint32_t agent = 0;
};

SolveResult solve_general(const Instance& inst, const DpOptions& opts,
                          std::chrono::steady_clock::time_point start) {
    const int n = inst.n;
    const int m = inst.item_count();
    std::vector<int> order;
    descending_items(inst, order);
    const Value vtotal = total_value(inst);
    const FeasibilityFrontier frontier = build_feasibility_frontier(inst, opts.budget);

    LowerBoundPrune prune;
    if (opts.lower_bound_prune) {
        prune.enabled = true;
        prune.floor = efx_lower_bound(inst);
    }

    std::vector<Cost> agent_item_cost(static_cast<std::size_t>(n) * m);
    for (int a = 0; a < n; ++a)
        for (int x = 0; x < m; ++x)
            agent_item_cost[static_cast<std::size_t>(a) * m + x] = item_cost(inst, a, x);

    const int stride = n + 1;  // value vector, then the obligation
    std::vector<GeneralDpLayer> layers(m + 1);
    std::vector<std::vector<GeneralDpEdge>> edges(m);  // edges[i-1] feeds layer i
    std::vector<std::vector<Cost>> layer_agent_cost(m + 1);
    layers[0].flat.assign(stride, 0);
    layers[0].cost.assign(1, 0);
    layers[0].dead.assign(1, 0);

    std::vector<Value> z(n), key(stride);
    Value assigned = 0;
    for (int i = 1; i <= m; ++i) {
        const int item = order[i - 1];
        const Value v = inst.values[item];
        assigned += v;
        const Value remaining = vtotal - assigned;
        const FeasibilityFrontier::Layer& cover_layer = frontier.layers[m - i];

        layer_agent_cost[i].resize(n);
        for (int j = 0; j < n; ++j)
            layer_agent_cost[i][j] = agent_item_cost[static_cast<std::size_t>(j) * m + item];

        GeneralDpLayer& prev = layers[i - 1];
        GeneralDpLayer& cur = layers[i];
        VecTable table(stride, vtotal, &cur.flat);
        const std::size_t prev_count = prev.count(stride);
        for (std::size_t si = 0; si < prev_count; ++si) {
            const Value* y = prev.flat.data() + si * stride;
            if (prev.dead[si]) continue;
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k) key[k] = y[k];
                key[j] += v;
                key[n] = std::max(y[n], y[j]);  // receipt obligates everyone to y[j]
                if (prune.cuts(key.data(), n, remaining)) continue;
                std::uint32_t di = table.insert(key.data());
                if (di == cur.cost.size()) {
                    // Coverage check once per state: each agent's shortfall
                    // against the obligation must be achievable with the
                    // remaining m-i smallest items. At the final layer this
                    // leaves exactly the EFx-complete states.
                    for (int k = 0; k < n; ++k) z[k] = key[n] > key[k] ? key[n] - key[k] : 0;
                    cur.cost.push_back(kInf);
                    cur.dead.push_back(layer_feasible(cover_layer, n, z.data()) ? 0 : 1);
                }
                if (cur.dead[di]) continue;
                const Cost c2 = prev.cost[si] + layer_agent_cost[i][j];
                if (c2 < cur.cost[di]) cur.cost[di] = c2;
                edges[i - 1].push_back({static_cast<std::uint32_t>(si), di,
                                        static_cast<std::uint32_t>(j)});
            }
            if (cur.count(stride) > opts.budget)
                throw BudgetError("value-vector table layer exceeds the state budget");
        }
    }

    Cost opt = kInf;
    for (Cost c : layers[m].cost) opt = std::min(opt, c);
    if (opt == kInf) throw InternalError("no admissible complete assignment in the table");

    // Completion costs, then the min-cost-tight ("alive") subgraph.
    layers[m].completion.assign(layers[m].count(stride), 0);
    for (std::size_t s = 0; s < layers[m].completion.size(); ++s)
        if (layers[m].dead[s]) layers[m].completion[s] = kInf;
    for (int i = m; i >= 1; --i) {
        layers[i - 1].completion.assign(layers[i - 1].count(stride), kInf);
        for (const GeneralDpEdge& e : edges[i - 1]) {
            const Cost down = layers[i].completion[e.dst];
            if (down == kInf) continue;
            const Cost cand = down + layer_agent_cost[i][e.agent];
            if (cand < layers[i - 1].completion[e.src]) layers[i - 1].completion[e.src] = cand;
        }
    }
    if (layers[0].completion[0] != opt)
        throw InternalError("completion cost at the origin disagrees with the table optimum");

    auto edge_alive = [&](int i, const GeneralDpEdge& e) {
        const Cost up = layers[i - 1].cost[e.src];
        const Cost down = layers[i].completion[e.dst];
        if (up == kInf || down == kInf) return false;
        return up + layer_agent_cost[i][e.agent] + down == opt;
    };

    // Greedy lexicographic owner choice: items in original index order, each
    // committed to the smallest agent that still leaves a min-cost path.
    std::vector<int> layer_of_item(m);
    for (int i = 1; i <= m; ++i) layer_of_item[order[i - 1]] = i;
    std::vector<int> committed(m + 1, -1);
    std::vector<char> reach_prev, reach_cur;
    auto path_exists = [&](int forced_layer, int forced_agent) {
        reach_prev.assign(1, 1);
        for (int i = 1; i <= m; ++i) {
            reach_cur.assign(layers[i].count(stride), 0);
            const int force = (i == forced_layer) ? forced_agent : committed[i];
            for (const GeneralDpEdge& e : edges[i - 1]) {
                if (force >= 0 && static_cast<int>(e.agent) != force) continue;
                if (!reach_prev[e.src] || !edge_alive(i, e)) continue;
                reach_cur[e.dst] = 1;
            }
            std::swap(reach_prev, reach_cur);
        }
        for (char r : reach_prev)
            if (r) return true;
        return m == 0;
    };
    for (int item = 0; item < m; ++item) {
        const int layer = layer_of_item[item];
        bool done = false;
        for (int a = 0; a < n && !done; ++a) {
            if (path_exists(layer, a)) {
                committed[layer] = a;
                done = true;
            }
        }
        if (!done) throw InternalError("owner reconstruction found no min-cost path");
    }

    SolveResult result = empty_result("dp", opts.collect_stats);
    result.cost = opt;
    result.allocation.owner.assign(m, 0);
    for (int i = 1; i <= m; ++i) result.allocation.owner[order[i - 1]] = committed[i];
    verify_reconstruction(inst, result.allocation, opt);
    if (opts.collect_stats) {
        std::uint64_t states = 0;
        for (const auto& layer : layers) states += layer.count(stride);
        result.stats["states"] = states;
        result.stats["frontier_states"] = frontier.state_count();
        result.stats["wall_us"] = elapsed_us(start);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Dense two-agent path: a state is (agent 0's bundle value, obligation),
// flattened into one cell index per layer. Semantics identical to the general
// path. Cells from the previous call are restored through per-layer touched
// lists instead of clearing whole arrays; the differential grid suite runs
// tens of millions of tiny instances through this function.
// ---------------------------------------------------------------------------

constexpr std::uint64_t kDenseCellCap = 4'000'000;

struct DenseScratch {
    std::vector<int> order;
    std::vector<Value> asc;
    std::vector<Value> asc_sum;                  // asc_sum[f] = sum of f smallest values
    std::vector<Value> desc_sum;                 // desc_sum[i] = sum of i largest values
    std::vector<std::vector<std::uint32_t>> pref;  // pref[f][t+1] = #achievable sums <= t
    std::vector<char> ach;
    std::vector<Cost> c0, c1;  // per-layer item cost for each agent
    std::vector<std::vector<Cost>> cost;                  // cost[i][y0 * width + ob]
    std::vector<std::vector<Cost>> completion;            // same indexing
    std::vector<std::vector<char>> reach;                 // same indexing
    std::vector<std::vector<std::uint32_t>> touched;      // finite cells of cost[i]
    std::vector<int> layer_of_item;
    std::vector<int> committed;
};

DenseScratch& dense_scratch() {
    thread_local DenseScratch s;
    return s;
}

SolveResult solve_dense2(const Instance& inst, const DpOptions& opts,
                         std::chrono::steady_clock::time_point start) {
    const int m = inst.item_count();
    const Value vtotal = total_value(inst);
    // Obligation axis, padded to a power of two so cell decode is shift/mask.
    const std::size_t width = std::bit_ceil(static_cast<std::size_t>(vtotal) + 1);
    const unsigned shift = static_cast<unsigned>(std::countr_zero(width));
    const std::size_t mask = width - 1;
    DenseScratch& s = dense_scratch();
    descending_items(inst, s.order);
    const std::vector<int>& order = s.order;

    LowerBoundPrune prune;
    if (opts.lower_bound_prune) {
        prune.enabled = true;
        prune.floor = efx_lower_bound(inst);
    }

    // Coverage layers over ascending values as prefix counts of achievable
    // subset sums: a demand (z0, z1) is coverable at layer f iff some
    // achievable sum lies in [z0, asc_sum[f] - z1].
    s.asc.assign(inst.values.begin(), inst.values.end());
    std::sort(s.asc.begin(), s.asc.end());
    s.asc_sum.assign(m + 1, 0);
    for (int f = 1; f <= m; ++f) s.asc_sum[f] = s.asc_sum[f - 1] + s.asc[f - 1];
    s.pref.resize(std::max(s.pref.size(), static_cast<std::size_t>(m) + 1));
    s.ach.assign(width, 0);
    s.ach[0] = 1;
    std::uint64_t frontier_states = 0;
    for (int f = 0; f <= m; ++f) {
        if (f > 0) {
            const Value v = s.asc[f - 1];
            if (v > 0)
                for (Value t = s.asc_sum[f]; t >= v; --t) s.ach[t] = s.ach[t] | s.ach[t - v];
        }
        auto& pref = s.pref[f];
        pref.assign(static_cast<std::size_t>(s.asc_sum[f]) + 2, 0);
        std::uint32_t acc = 0;
        for (Value t = 0; t <= s.asc_sum[f]; ++t) {
            acc += s.ach[t];
            pref[t + 1] = acc;
        }
        frontier_states += acc;
    }
    auto coverable = [&](int f, Value z0, Value z1) {
        if (z0 + z1 > s.asc_sum[f]) return false;
        const Value hi = s.asc_sum[f] - z1;
        return s.pref[f][hi + 1] > (z0 == 0 ? 0 : s.pref[f][z0]);
    };

    s.c0.assign(m + 1, 0);
    s.c1.assign(m + 1, 0);
    for (int i = 1; i <= m; ++i) {
        s.c0[i] = item_cost(inst, 0, order[i - 1]);
        s.c1[i] = item_cost(inst, 1, order[i - 1]);
    }
    const std::vector<Cost>& c0v = s.c0;
    const std::vector<Cost>& c1v = s.c1;

    s.desc_sum.assign(m + 1, 0);
    for (int i = 1; i <= m; ++i) s.desc_sum[i] = s.desc_sum[i - 1] + inst.values[order[i - 1]];
    const std::vector<Value>& desc_sum = s.desc_sum;

    // Restore every cell the previous call wrote, then size this call's layers.
    for (std::size_t i = 0; i < s.touched.size(); ++i) {
        for (std::uint32_t idx : s.touched[i]) {
            s.cost[i][idx] = kInf;
            s.completion[i][idx] = kInf;
        }
        s.touched[i].clear();
    }
    const std::size_t layer_count = static_cast<std::size_t>(m) + 1;
    if (s.cost.size() < layer_count) {
        s.cost.resize(layer_count);
        s.completion.resize(layer_count);
        s.reach.resize(layer_count);
        s.touched.resize(layer_count);
    }
    for (int i = 0; i <= m; ++i) {
        const std::size_t cells = (static_cast<std::size_t>(desc_sum[i]) + 1) * width;
        if (s.cost[i].size() < cells) {
            s.cost[i].resize(cells, kInf);
            s.completion[i].resize(cells, kInf);
            s.reach[i].resize(cells, 0);
        }
    }

    auto relax = [&](int i, std::size_t idx, Cost c2) {
        Cost& slot = s.cost[i][idx];
        if (slot == kInf) s.touched[i].push_back(static_cast<std::uint32_t>(idx));
        if (c2 < slot) slot = c2;
    };

    // Forward sweep. A transition is admitted when the remaining items can
    // still lift both agents to the new obligation; at the final layer that
    // admits exactly the EFx-complete cells.
    s.cost[0][0] = 0;
    s.touched[0].push_back(0);
    for (int i = 1; i <= m; ++i) {
        const Value v = inst.values[order[i - 1]];
        const Value sum_prev = desc_sum[i - 1];
        const Value remaining = vtotal - desc_sum[i];
        const int f = m - i;
        for (std::uint32_t idx : s.touched[i - 1]) {
            const Cost c = s.cost[i - 1][idx];
            const Value y0 = idx >> shift;
            const Value ob = idx & mask;
            const Value y1 = sum_prev - y0;
            // give to agent 0
            {
                const Value ob2 = std::max(ob, y0);
                const Value ny0 = y0 + v;
                if (coverable(f, ob2 > ny0 ? ob2 - ny0 : 0, ob2 > y1 ? ob2 - y1 : 0)) {
                    Value pair[2] = {ny0, y1};
                    if (!prune.cuts(pair, 2, remaining))
                        relax(i, static_cast<std::size_t>(ny0) * width + ob2, c + c0v[i]);
                }
            }
            // give to agent 1
            {
                const Value ob2 = std::max(ob, y1);
                const Value ny1 = y1 + v;
                if (coverable(f, ob2 > y0 ? ob2 - y0 : 0, ob2 > ny1 ? ob2 - ny1 : 0)) {
                    Value pair[2] = {y0, ny1};
                    if (!prune.cuts(pair, 2, remaining))
                        relax(i, static_cast<std::size_t>(y0) * width + ob2, c + c1v[i]);
                }
            }
        }
    }

    Cost opt = kInf;
    for (std::uint32_t idx : s.touched[m]) opt = std::min(opt, s.cost[m][idx]);
    if (opt == kInf) throw InternalError("no admissible complete assignment in the table");

    // Completion costs over the same edge set.
    for (std::uint32_t idx : s.touched[m]) s.completion[m][idx] = 0;
    for (int i = m; i >= 1; --i) {
        const Value v = inst.values[order[i - 1]];
        const Value sum_prev = desc_sum[i - 1];
        const Value remaining = vtotal - desc_sum[i];
        const int f = m - i;
        const auto& down = s.completion[i];
        for (std::uint32_t idx : s.touched[i - 1]) {
            const Value y0 = idx >> shift;
            const Value ob = idx & mask;
            const Value y1 = sum_prev - y0;
            Cost best = kInf;
            {
                const Value ob2 = std::max(ob, y0);
                const Value ny0 = y0 + v;
                if (coverable(f, ob2 > ny0 ? ob2 - ny0 : 0, ob2 > y1 ? ob2 - y1 : 0)) {
                    Value pair[2] = {ny0, y1};
                    const Cost d = prune.cuts(pair, 2, remaining)
                                       ? kInf
                                       : down[static_cast<std::size_t>(ny0) * width + ob2];
                    if (d != kInf) best = std::min(best, d + c0v[i]);
                }
            }
            {
                const Value ob2 = std::max(ob, y1);
                const Value ny1 = y1 + v;
                if (coverable(f, ob2 > y0 ? ob2 - y0 : 0, ob2 > ny1 ? ob2 - ny1 : 0)) {
                    Value pair[2] = {y0, ny1};
                    const Cost d = prune.cuts(pair, 2, remaining)
                                       ? kInf
                                       : down[static_cast<std::size_t>(y0) * width + ob2];
                    if (d != kInf) best = std::min(best, d + c1v[i]);
                }
            }
            s.completion[i - 1][idx] = best;
        }
    }
    if (s.completion[0][0] != opt)
        throw InternalError("completion cost at the origin disagrees with the table optimum");

    // Greedy lexicographic owner choice, as in the general path.
    s.layer_of_item.assign(m, 0);
    for (int i = 1; i <= m; ++i) s.layer_of_item[order[i - 1]] = i;
    s.committed.assign(m + 1, -1);
    std::vector<int>& committed = s.committed;
    auto path_exists = [&](int forced_layer, int forced_agent) {
        for (int i = 0; i <= m; ++i)
            for (std::uint32_t idx : s.touched[i]) s.reach[i][idx] = 0;
        s.reach[0][0] = 1;
        for (int i = 1; i <= m; ++i) {
            const Value v = inst.values[order[i - 1]];
            const Value sum_prev = desc_sum[i - 1];
            const int f = m - i;
            const int force = (i == forced_layer) ? forced_agent : committed[i];
            const auto& down = s.completion[i];
            for (std::uint32_t idx : s.touched[i - 1]) {
                if (!s.reach[i - 1][idx]) continue;
                const Cost up = s.cost[i - 1][idx];
                const Value y0 = idx >> shift;
                const Value ob = idx & mask;
                const Value y1 = sum_prev - y0;
                if (force != 1) {
                    const Value ob2 = std::max(ob, y0);
                    const std::size_t dst = static_cast<std::size_t>(y0 + v) * width + ob2;
                    if (coverable(f, ob2 > y0 + v ? ob2 - (y0 + v) : 0, ob2 > y1 ? ob2 - y1 : 0) &&
                        down[dst] != kInf && up + c0v[i] + down[dst] == opt)
                        s.reach[i][dst] = 1;
                }
                if (force != 0) {
                    const Value ob2 = std::max(ob, y1);
                    const std::size_t dst = static_cast<std::size_t>(y0) * width + ob2;
                    if (coverable(f, ob2 > y0 ? ob2 - y0 : 0, ob2 > y1 + v ? ob2 - (y1 + v) : 0) &&
                        down[dst] != kInf && up + c1v[i] + down[dst] == opt)
                        s.reach[i][dst] = 1;
                }
            }
        }
        for (std::uint32_t idx : s.touched[m])
            if (s.reach[m][idx]) return true;
        return false;
    };
    for (int item = 0; item < m; ++item) {
        const int layer = s.layer_of_item[item];
        bool done = false;
        for (int a = 0; a < 2 && !done; ++a) {
            if (path_exists(layer, a)) {
                committed[layer] = a;
                done = true;
            }
        }
        if (!done) throw InternalError("owner reconstruction found no min-cost path");
    }

    SolveResult result = empty_result("dp", opts.collect_stats);
    result.cost = opt;
    result.allocation.owner.assign(m, 0);
    for (int i = 1; i <= m; ++i) result.allocation.owner[order[i - 1]] = committed[i];
    verify_dense2(inst, result.allocation, opt);
    if (opts.collect_stats) {
        std::uint64_t states = 0;
        for (int i = 0; i <= m; ++i) states += s.touched[i].size();
        result.stats["states"] = states;
        result.stats["frontier_states"] = frontier_states;
        result.stats["wall_us"] = elapsed_us(start);
    }
    return result;
}

}  // namespace

bool FeasibilityFrontier::feasible(int layer, const std::vector<Value>& z) const {
    if (layer < 0 || layer >= static_cast<int>(layers.size()))
        throw PreconditionError("frontier layer index out of range");
    if (static_cast<int>(z.size()) != n)
        throw PreconditionError("demand vector length must equal the agent count");
    return layer_feasible(layers[layer], n, z.data());
}

std::uint64_t FeasibilityFrontier::state_count() const {
    std::uint64_t total = 0;
    for (const Layer& layer : layers) total += layer.count(n);
    return total;
}

FeasibilityFrontier build_feasibility_frontier(const Instance& inst, std::uint64_t budget) {
    validate_instance(inst);
    const int n = inst.n;
    const int m = inst.item_count();
    const Value vtotal = total_value(inst);

    std::vector<Value> asc = inst.values;
    std::sort(asc.begin(), asc.end());

    FeasibilityFrontier frontier;
    frontier.n = n;
    frontier.layers.resize(m + 1);
    frontier.layers[0].flat.assign(n, 0);
    frontier.layers[0].coord_max.assign(n, 0);
    frontier.layers[0].sum = 0;

    std::vector<Value> y2(n);
    for (int f = 1; f <= m; ++f) {
        const Value v = asc[f - 1];
        const FeasibilityFrontier::Layer& prev = frontier.layers[f - 1];
        FeasibilityFrontier::Layer& cur = frontier.layers[f];
        cur.sum = prev.sum + v;
        VecTable table(n, vtotal, &cur.flat);
        const std::size_t prev_count = prev.count(n);
        for (std::size_t si = 0; si < prev_count; ++si) {
            const Value* y = prev.flat.data() + si * n;
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k) y2[k] = y[k];
                y2[j] += v;
                table.insert(y2.data());
            }
            if (cur.count(n) > budget)
                throw BudgetError("feasibility frontier layer exceeds the state budget");
        }
        cur.coord_max.assign(n, 0);
        const std::size_t count = cur.count(n);
        for (std::size_t si = 0; si < count; ++si)
            for (int k = 0; k < n; ++k)
                cur.coord_max[k] = std::max(cur.coord_max[k], cur.flat[si * n + k]);
    }
    return frontier;
}

SolveResult solve_value_vector_dp(const Instance& inst, const DpOptions& opts) {
    std::chrono::steady_clock::time_point start;
    if (opts.collect_stats) start = std::chrono::steady_clock::now();
    validate_instance(inst);
    if (inst.item_count() == 0) {
        SolveResult r = empty_result("dp", opts.collect_stats);
        if (opts.collect_stats) r.stats["wall_us"] = elapsed_us(start);
        return r;
    }
    if (!opts.force_general_path && inst.n == 2) {
        const Value vtotal = total_value(inst);
        if (vtotal < kDenseCellCap) {
            const std::uint64_t width = std::bit_ceil(vtotal + 1);
            const unsigned __int128 cells = static_cast<unsigned __int128>(inst.item_count() + 1) *
                                            (vtotal + 1) * width;
            if (cells <= std::min<std::uint64_t>(kDenseCellCap, opts.budget))
                return solve_dense2(inst, opts, start);
        }
    }
    return solve_general(inst, opts, start);
}

}  // namespace efx
