#include "efx/types_dp.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <unordered_map>

#include "efx/fairness.hpp"

namespace efx {

namespace {

constexpr Cost kInf = std::numeric_limits<Cost>::max();

void check_config(const TypeProfile& profile, const std::vector<int>& x) {
    if (x.size() != profile.s.size())
        throw PreconditionError("configuration length must equal the number of item types");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < 0 || x[i] > profile.mult[i])
            throw PreconditionError("configuration count outside the type multiplicity");
}

struct ConfigScan {
    Value value = 0;
    Value min_used = 0;
    bool any = false;
};

ConfigScan scan_config(const TypeProfile& profile, const std::vector<int>& x) {
    ConfigScan r;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        r.value += static_cast<Value>(x[i]) * profile.s[i];
        if (!r.any) {
            r.min_used = profile.s[i];  // s is ascending: first present type is the min
            r.any = true;
        }
    }
    return r;
}

std::uint64_t elapsed_us(std::chrono::steady_clock::time_point start) {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::microseconds>(
                                          std::chrono::steady_clock::now() - start)
                                          .count());
}

}  // namespace

TypeProfile type_profile(const Instance& inst) {
    std::map<Value, int> groups;
    for (Value v : inst.values) ++groups[v];
    TypeProfile profile;
    profile.s.reserve(groups.size());
    profile.mult.reserve(groups.size());
    for (const auto& [value, count] : groups) {
        profile.s.push_back(value);
        profile.mult.push_back(count);
    }
    return profile;
}

Value bundle_bound(const TypeProfile& profile, const std::vector<int>& x) {
    check_config(profile, x);
    const ConfigScan r = scan_config(profile, x);
    return r.any ? r.value - r.min_used : 0;
}

bool config_satisfies(const TypeProfile& profile, const std::vector<int>& z, Value bound) {
    check_config(profile, z);
    const ConfigScan r = scan_config(profile, z);
    if (!r.any) return bound == 0;
    return r.value - r.min_used <= bound && r.value >= bound;
}

namespace {

// One admissible configuration for a fixed bound, with its digits inlined for
// component-wise capacity checks.
struct AdmConfig {
    std::uint64_t rank;
    Value value;
};

struct TypeDpEngine {
    const Instance& inst;
    const TypeDpOptions& opts;
    const FactorCosts& factors;
    TypeProfile profile;
    int n;
    int beta;
    Value vtotal = 0;
    Value s_max = 0;

    // Mixed-radix ranks over per-type counts, index 0 most significant, so
    // ascending rank order equals lexicographic order on count tuples and
    // ranks add component-wise without carries.
    std::vector<std::uint64_t> stride;
    std::uint64_t space = 1;
    std::vector<Value> cfg_value;  // bundle value per rank
    std::vector<Value> cfg_bound;  // value-minus-min per rank (0 for empty)

    std::vector<int> order;        // agents by (factor desc, index asc), maybe reversed
    std::vector<int> pos_in_order; // agent -> position in `order`

    std::vector<AdmConfig> adm;      // admissible configs for the current bound
    std::vector<int> adm_digits;     // their digits, stride beta
    std::vector<Cost> cur, next;     // dense per-layer cost arrays, reset via touched lists
    std::vector<std::uint64_t> cur_touched, next_touched;

    std::uint64_t work = 0;
    std::uint64_t states = 0;
    std::uint64_t guesses = 0;

    explicit TypeDpEngine(const Instance& i, const TypeDpOptions& o, const FactorCosts& f)
        : inst(i), opts(o), factors(f) {}

    void charge(std::uint64_t amount) {
        work += amount;
        if (work > opts.budget)
            throw BudgetError("type solver exceeded the exploration budget");
    }

    void setup() {
        profile = type_profile(inst);
        n = inst.n;
        beta = profile.beta();
        vtotal = total_value(inst);
        if (beta > 0) s_max = profile.s.back();

        stride.assign(beta, 1);
        space = 1;
        for (int i = beta - 1; i >= 0; --i) {
            stride[i] = space;
            const std::uint64_t radix = static_cast<std::uint64_t>(profile.mult[i]) + 1;
            if (__builtin_mul_overflow(space, radix, &space) || space > opts.budget)
                throw BudgetError("type configuration space exceeds the budget");
        }
        charge(space);

        cfg_value.assign(space, 0);
        cfg_bound.assign(space, 0);
        std::vector<int> digits(beta, 0);
        for (std::uint64_t r = 0; r < space; ++r) {
            Value value = 0, min_used = 0;
            bool any = false;
            for (int i = 0; i < beta; ++i) {
                if (digits[i] == 0) continue;
                value += static_cast<Value>(digits[i]) * profile.s[i];
                if (!any) {
                    min_used = profile.s[i];
                    any = true;
                }
            }
            cfg_value[r] = value;
            cfg_bound[r] = any ? value - min_used : 0;
            for (int i = beta - 1; i >= 0; --i) {
                if (++digits[i] <= profile.mult[i]) break;
                digits[i] = 0;
            }
        }

        order.resize(n);
        for (int a = 0; a < n; ++a) order[a] = a;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (factors.alphas[a] != factors.alphas[b]) return factors.alphas[a] > factors.alphas[b];
            return a < b;
        });
        if (opts.reverse_inner_order) std::reverse(order.begin(), order.end());
        pos_in_order.assign(n, 0);
        for (int p = 0; p < n; ++p) pos_in_order[order[p]] = p;

        cur.assign(space, kInf);
        next.assign(space, kInf);
    }

    void decode(std::uint64_t rank, int* digits) const {
        for (int i = 0; i < beta; ++i) {
            digits[i] = static_cast<int>(rank / stride[i]);
            rank %= stride[i];
        }
    }

    void build_admissible(Value bound) {
        adm.clear();
        adm_digits.clear();
        charge(space);
        std::vector<int> digits(beta, 0);
        for (std::uint64_t r = 0; r < space; ++r) {
            if (cfg_bound[r] <= bound && cfg_value[r] >= bound) {
                adm.push_back({r, cfg_value[r]});
                adm_digits.insert(adm_digits.end(), digits.begin(), digits.end());
            }
            for (int i = beta - 1; i >= 0; --i) {
                if (++digits[i] <= profile.mult[i]) break;
                digits[i] = 0;
            }
        }
    }

    // Minimum cost of distributing `target` over the agents whose factors are
    // given in `rem_alphas` (already in processing order), admitting only the
    // configurations currently in `adm`. kInf when impossible.
    Cost pool_cost(std::uint64_t target_rank, const int* target_digits, Value bound,
                   const std::vector<Value>& rem_alphas) {
        const int r = static_cast<int>(rem_alphas.size());
        const Value pool_value = cfg_value[target_rank];
        cur[0] = 0;
        cur_touched.assign(1, 0);
        std::vector<int> res(beta);
        Cost answer = kInf;
        for (int t = 0; t < r; ++t) {
            const Value alpha = rem_alphas[t];
            const int behind = r - t - 1;  // agents still waiting after this one
            next_touched.clear();
            for (std::uint64_t sr : cur_touched) {
                const Cost base = cur[sr];
                decode(sr, res.data());
                for (int i = 0; i < beta; ++i) res[i] = target_digits[i] - res[i];
                const Value residual = pool_value - cfg_value[sr];
                charge(adm.size() + 1);
                for (std::size_t zi = 0; zi < adm.size(); ++zi) {
                    const AdmConfig& z = adm[zi];
                    if (z.value > residual) continue;
                    const unsigned __int128 after = residual - z.value;
                    // every waiting agent still needs a bundle of value in
                    // [bound, bound + s_max]
                    if (after < static_cast<unsigned __int128>(behind) * bound) continue;
                    if (after > static_cast<unsigned __int128>(behind) *
                                    (static_cast<unsigned __int128>(bound) + s_max))
                        continue;
                    const int* zd = adm_digits.data() + zi * beta;
                    bool fits = true;
                    for (int i = 0; i < beta; ++i)
                        if (zd[i] > res[i]) {
                            fits = false;
                            break;
                        }
                    if (!fits) continue;
                    const std::uint64_t nr = sr + z.rank;
                    const Cost c2 = base + alpha * z.value;
                    if (next[nr] == kInf) next_touched.push_back(nr);
                    if (c2 < next[nr]) next[nr] = c2;
                }
            }
            for (std::uint64_t sr : cur_touched) cur[sr] = kInf;
            std::swap(cur, next);
            std::swap(cur_touched, next_touched);
            states += cur_touched.size();
        }
        answer = cur[target_rank];
        for (std::uint64_t sr : cur_touched) cur[sr] = kInf;
        return answer;
    }

    // Re-runs the winning guess with parent records to extract per-agent
    // configurations. rem lists the non-designated agents in processing order.
    std::vector<std::uint64_t> reconstruct(std::uint64_t target_rank, const int* target_digits,
                                           const std::vector<int>& rem) {
        struct Node {
            std::uint64_t rank;
            Cost cost;
            std::uint32_t parent;
            std::uint32_t via;  // index into adm
        };
        const int r = static_cast<int>(rem.size());
        std::vector<std::vector<Node>> layers(r + 1);
        std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> index(r + 1);
        layers[0].push_back({0, 0, 0, 0});
        index[0].emplace(0, 0);
        std::vector<int> res(beta);
        for (int t = 0; t < r; ++t) {
            const Value alpha = factors.alphas[rem[t]];
            for (std::uint32_t si = 0; si < layers[t].size(); ++si) {
                const Node node = layers[t][si];
                decode(node.rank, res.data());
                for (int i = 0; i < beta; ++i) res[i] = target_digits[i] - res[i];
                charge(adm.size() + 1);
                for (std::size_t zi = 0; zi < adm.size(); ++zi) {
                    const int* zd = adm_digits.data() + zi * beta;
                    bool fits = true;
                    for (int i = 0; i < beta; ++i)
                        if (zd[i] > res[i]) {
                            fits = false;
                            break;
                        }
                    if (!fits) continue;
                    const std::uint64_t nr = node.rank + adm[zi].rank;
                    const Cost c2 = node.cost + alpha * adm[zi].value;
                    auto [it, fresh] =
                        index[t + 1].emplace(nr, static_cast<std::uint32_t>(layers[t + 1].size()));
                    if (fresh)
                        layers[t + 1].push_back({nr, c2, si, static_cast<std::uint32_t>(zi)});
                    else if (c2 < layers[t + 1][it->second].cost)
                        layers[t + 1][it->second] = {nr, c2, si, static_cast<std::uint32_t>(zi)};
                }
            }
            states += layers[t + 1].size();
        }
        auto it = index[r].find(target_rank);
        if (it == index[r].end())
            throw InternalError("winning guess lost its completion during reconstruction");
        std::vector<std::uint64_t> configs(r, 0);
        std::uint32_t at = it->second;
        for (int t = r - 1; t >= 0; --t) {
            configs[t] = adm[layers[t + 1][at].via].rank;
            at = layers[t + 1][at].parent;
        }
        return configs;
    }
};

}  // namespace

SolveResult solve_type_dp(const Instance& inst, const TypeDpOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    validate_instance(inst);
    const auto* factors = std::get_if<FactorCosts>(&inst.cost_model);
    if (!factors) throw PreconditionError("type solver requires the factor cost model");

    TypeDpEngine eng(inst, opts, *factors);
    eng.setup();
    const int n = eng.n;
    const int beta = eng.beta;
    const std::uint64_t full_rank = eng.space - 1;  // rank of the full multiset `mult`

    // Guess buckets keyed by designated bound; x ranks ascend within a bucket.
    std::map<Value, std::vector<std::uint64_t>> buckets;
    for (std::uint64_t r = 0; r < eng.space; ++r) buckets[eng.cfg_bound[r]].push_back(r);

    Cost best_cost = std::numeric_limits<Cost>::max();
    int best_j = -1;
    std::uint64_t best_x = 0;
    Value best_bound = 0;

    std::vector<int> target_digits(beta);
    std::vector<Value> rem_alphas(n > 0 ? n - 1 : 0);
    for (const auto& [bound, xs] : buckets) {
        // No complete assignment can give n bundles of value >= bound.
        if (bound > 0 && static_cast<unsigned __int128>(bound) * n > eng.vtotal) continue;
        eng.build_admissible(bound);
        for (std::uint64_t xr : xs) {
            // The n-1 non-designated bundles each need value >= bound.
            if (static_cast<unsigned __int128>(bound) * (n - 1) + eng.cfg_value[xr] > eng.vtotal)
                continue;
            const std::uint64_t target_rank = full_rank - xr;
            eng.decode(target_rank, target_digits.data());
            // The inner cost depends on the designated agent only through its
            // factor (removing equal factors leaves the same processing
            // sequence), so memoize per distinct factor.
            std::vector<std::pair<Value, Cost>> memo;
            for (int j = 0; j < n; ++j) {
                ++eng.guesses;
                const Value alpha_j = factors->alphas[j];
                Cost pool = kInf;
                bool found = false;
                for (const auto& [a, c] : memo)
                    if (a == alpha_j) {
                        pool = c;
                        found = true;
                        break;
                    }
                if (!found) {
                    int idx = 0;
                    for (int p = 0; p < n; ++p)
                        if (eng.order[p] != j) rem_alphas[idx++] = factors->alphas[eng.order[p]];
                    pool = eng.pool_cost(target_rank, target_digits.data(), bound, rem_alphas);
                    memo.emplace_back(alpha_j, pool);
                }
                if (pool == kInf) continue;
                const Cost total = pool + alpha_j * eng.cfg_value[xr];
                if (total < best_cost ||
                    (total == best_cost &&
                     (j < best_j || (j == best_j && xr < best_x)))) {
                    best_cost = total;
                    best_j = j;
                    best_x = xr;
                    best_bound = bound;
                }
            }
        }
    }
    if (best_j < 0) throw InternalError("no designated-bundle guess admitted a complete assignment");

    // Reconstruct the winner: literal inner DP with parent records.
    eng.build_admissible(best_bound);
    const std::uint64_t target_rank = full_rank - best_x;
    eng.decode(target_rank, target_digits.data());
    std::vector<int> rem;
    rem.reserve(n - 1);
    for (int p = 0; p < n; ++p)
        if (eng.order[p] != best_j) rem.push_back(eng.order[p]);
    const std::vector<std::uint64_t> configs = eng.reconstruct(target_rank, target_digits.data(), rem);

    // Per-agent per-type counts: designated gets best_x, the rest their configs.
    std::vector<std::vector<int>> counts(n, std::vector<int>(beta, 0));
    eng.decode(best_x, counts[best_j].data());
    std::vector<int> zd(beta);
    for (std::size_t t = 0; t < rem.size(); ++t) {
        eng.decode(configs[t], zd.data());
        for (int i = 0; i < beta; ++i) counts[rem[t]][i] += zd[i];
    }

    // Types map back to concrete items in ascending index order, consumed by
    // agents in ascending index order.
    SolveResult result;
    result.allocation.owner.assign(inst.item_count(), -1);
    for (int i = 0; i < beta; ++i) {
        std::vector<int> items;
        for (int x = 0; x < inst.item_count(); ++x)
            if (inst.values[x] == eng.profile.s[i]) items.push_back(x);
        std::size_t at = 0;
        for (int a = 0; a < n; ++a)
            for (int k = 0; k < counts[a][i]; ++k) result.allocation.owner[items.at(at++)] = a;
        if (at != items.size())
            throw InternalError("type counts do not cover the item multiset");
    }

    result.cost = best_cost;
    result.algorithm = "types";
    if (allocation_cost(inst, result.allocation) != best_cost)
        throw InternalError("reconstructed allocation cost disagrees with the table optimum");
    if (!is_efx(inst, result.allocation))
        throw InternalError("reconstructed minimum-cost allocation is not EFx");
    result.stats["states"] = eng.states;
    result.stats["transitions"] = eng.work;
    result.stats["guesses"] = eng.guesses;
    result.stats["bound"] = best_bound;
    result.stats["designated_agent"] = static_cast<std::uint64_t>(best_j);
    result.stats["wall_us"] = elapsed_us(start);
    return result;
}

}  // namespace efx
