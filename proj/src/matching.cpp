#include "efx/matching.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

#include "efx/fairness.hpp"

namespace efx {

namespace {

using Big = __int128;
constexpr Big kBigInf = Big(1) << 100;

std::uint64_t elapsed_us(std::chrono::steady_clock::time_point start) {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::microseconds>(
                                          std::chrono::steady_clock::now() - start)
                                          .count());
}

// Minimum-cost assignment saturating all rows (rows <= cols), dense matrix
// with kBigInf marking absent edges. Potential-based shortest augmenting
// paths; a row with no finite augmenting path trips the defensive Hall check.
struct Hungarian {
    int rows, cols;
    const std::vector<Big>& a;  // rows * cols

    Big at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    // returns row -> col matching
    std::vector<int> solve() const {
        std::vector<Big> u(rows, 0), v(cols + 1, 0), minv(cols + 1);
        std::vector<int> p(cols + 1, -1), way(cols + 1, 0);
        for (int i = 0; i < rows; ++i) {
            int j0 = cols;  // virtual unmatched column
            p[cols] = i;
            std::fill(minv.begin(), minv.end(), kBigInf);
            std::vector<char> used(cols + 1, 0);
            do {
                used[j0] = 1;
                const int i0 = p[j0];
                Big delta = kBigInf;
                int j1 = -1;
                for (int j = 0; j < cols; ++j) {
                    if (used[j]) continue;
                    const Big w = at(i0, j);
                    if (w < kBigInf) {
                        const Big cur = w - u[i0] - v[j];
                        if (cur < minv[j]) {
                            minv[j] = cur;
                            way[j] = j0;
                        }
                    }
                    if (minv[j] < delta) {
                        delta = minv[j];
                        j1 = j;
                    }
                }
                if (j1 < 0 || delta >= kBigInf)
                    throw InternalError("item matching violates Hall's condition");
                for (int j = 0; j <= cols; ++j) {
                    if (used[j]) {
                        if (p[j] >= 0) u[p[j]] += delta;
                        v[j] -= delta;
                    } else {
                        minv[j] -= delta;
                    }
                }
                j0 = j1;
            } while (p[j0] >= 0);
            do {
                const int j1 = way[j0];
                p[j0] = p[j1];
                j0 = j1;
            } while (j0 != cols);
        }
        std::vector<int> row_to_col(rows, -1);
        for (int j = 0; j < cols; ++j)
            if (p[j] >= 0) row_to_col[p[j]] = j;
        for (int i = 0; i < rows; ++i)
            if (row_to_col[i] < 0 || at(i, row_to_col[i]) >= kBigInf)
                throw InternalError("item matching violates Hall's condition");
        return row_to_col;
    }
};

}  // namespace

SolveResult solve_singleton_matching(const Instance& inst, const MatchingOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    validate_instance(inst);
    const int n = inst.n;
    const int m = inst.item_count();
    if (n < m)
        throw PreconditionError("singleton matching requires at least as many agents as items");
    for (Value v : inst.values)
        if (v == 0)
            throw PreconditionError("singleton matching requires every item value to be positive");

    SolveResult result;
    result.algorithm = "matching";
    result.allocation.owner.assign(m, -1);
    std::uint64_t hungarian_runs = 0;

    if (m == 0) {
        result.cost = 0;
        result.stats["edges"] = 0;
        result.stats["hungarian_runs"] = 0;
        result.stats["wall_us"] = elapsed_us(start);
        return result;
    }

    // Candidate agents per item: the m lowest-cost ones, ties by agent index.
    std::vector<std::vector<int>> cand(m);
    for (int x = 0; x < m; ++x) {
        if (!opts.prune || n <= m) {
            cand[x].resize(n);
            std::iota(cand[x].begin(), cand[x].end(), 0);
        } else {
            std::vector<int> agents(n);
            std::iota(agents.begin(), agents.end(), 0);
            std::partial_sort(agents.begin(), agents.begin() + m, agents.end(),
                              [&](int a, int b) {
                                  const Cost ca = item_cost(inst, a, x), cb = item_cost(inst, b, x);
                                  if (ca != cb) return ca < cb;
                                  return a < b;
                              });
            agents.resize(m);
            std::sort(agents.begin(), agents.end());
            cand[x] = std::move(agents);
        }
    }

    if (m == 1) {
        // Single item: its cheapest candidate, lowest index on ties.
        int best = cand[0].front();
        for (int a : cand[0])
            if (item_cost(inst, a, 0) < item_cost(inst, best, 0)) best = a;
        result.allocation.owner[0] = best;
        result.cost = item_cost(inst, best, 0);
        result.stats["edges"] = cand[0].size();
        result.stats["hungarian_runs"] = 0;
    } else {
        // Column space: the union of candidate agents, ascending.
        std::vector<int> pool;
        for (const auto& c : cand) pool.insert(pool.end(), c.begin(), c.end());
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
        std::vector<int> col_of(n, -1);
        for (std::size_t j = 0; j < pool.size(); ++j) col_of[pool[j]] = static_cast<int>(j);

        std::uint64_t edges = 0;
        for (const auto& c : cand) edges += c.size();

        // Solves the sub-matching of items `first..m-1` over non-banned pool
        // agents; returns its cost, or kBigInf only via the Hall error inside.
        std::vector<char> banned(pool.size(), 0);
        auto sub_cost = [&](int first) -> Big {
            const int rows = m - first;
            if (rows == 0) return 0;
            std::vector<Big> mat(static_cast<std::size_t>(rows) * pool.size(), kBigInf);
            for (int i = 0; i < rows; ++i)
                for (int a : cand[first + i]) {
                    const int j = col_of[a];
                    if (!banned[j])
                        mat[static_cast<std::size_t>(i) * pool.size() + j] =
                            static_cast<Big>(item_cost(inst, a, first + i));
                }
            ++hungarian_runs;
            Hungarian h{rows, static_cast<int>(pool.size()), mat};
            const std::vector<int> match = h.solve();
            Big total = 0;
            for (int i = 0; i < rows; ++i) total += mat[static_cast<std::size_t>(i) * pool.size() + match[i]];
            return total;
        };

        const Big optimum = sub_cost(0);
        // Fix items in order, each to the smallest candidate agent that still
        // completes at minimum cost: the lexicographic tie-break.
        Big fixed_cost = 0;
        for (int x = 0; x < m; ++x) {
            bool done = false;
            for (int a : cand[x]) {
                const int j = col_of[a];
                if (banned[j]) continue;
                banned[j] = 1;
                const Big with = fixed_cost + static_cast<Big>(item_cost(inst, a, x)) + sub_cost(x + 1);
                if (with == optimum) {
                    result.allocation.owner[x] = a;
                    fixed_cost += static_cast<Big>(item_cost(inst, a, x));
                    done = true;
                    break;
                }
                banned[j] = 0;
            }
            if (!done) throw InternalError("no candidate agent preserves the matching optimum");
        }
        result.cost = static_cast<Cost>(optimum);
        result.stats["edges"] = edges;
        result.stats["hungarian_runs"] = hungarian_runs;
    }

    if (allocation_cost(inst, result.allocation) != result.cost)
        throw InternalError("matching allocation cost disagrees with the matching optimum");
    if (!is_efx(inst, result.allocation))
        throw InternalError("singleton matching produced a non-EFx allocation");
    result.stats["wall_us"] = elapsed_us(start);
    return result;
}

}  // namespace efx
