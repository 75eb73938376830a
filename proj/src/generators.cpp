#include "efx/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace efx {

std::uint64_t uniform_upto(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) return 0;
    std::uint64_t mask = bound;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
        const std::uint64_t x = rng() & mask;
        if (x <= bound) return x;
    }
}

namespace {

Value half_of_even_sum(const std::vector<Value>& S, const char* who) {
    Value sum = 0;
    for (Value s : S) {
        if (__builtin_add_overflow(sum, s, &sum))
            throw PreconditionError(std::string(who) + ": multiset sum overflows");
    }
    if (sum % 2 != 0) throw PreconditionError(std::string(who) + ": multiset sum must be even");
    return sum / 2;
}

// Canonical trivial no-instance shared by the reductions that map invalid
// inputs to a fixed "no": two items of value 2, alphas (0,1), threshold 1.
// The only EFx allocations split the items, so the optimum is 2 > 1.
GeneratedInstance trivial_no_instance(std::string contract) {
    GeneratedInstance g;
    g.instance.n = 2;
    g.instance.values = {2, 2};
    g.instance.cost_model = FactorCosts{{0, 1}};
    g.threshold = 1;
    g.contract = std::move(contract);
    validate_instance(g.instance);
    return g;
}

const char* kPartitionContract =
    "an equal-sum partition of the source multiset exists iff the minimum EFx cost is at most "
    "the threshold";
const char* kFactorHardnessContract =
    "an equal-cardinality equal-sum partition of the source multiset exists iff the minimum EFx "
    "cost is at most the threshold";
const char* kBinPackingContract =
    "the sizes pack into the given number of bins iff the minimum EFx cost is at most the "
    "threshold";
const char* kGadgetFactorContract =
    "if an equal-cardinality equal-sum partition of the source multiset exists the minimum EFx "
    "cost equals the threshold, and it is never below the threshold";

}  // namespace

GeneratedInstance gen_from_partition(const std::vector<Value>& S) {
    if (S.empty()) throw PreconditionError("gen_from_partition: empty multiset");
    const Value T = half_of_even_sum(S, "gen_from_partition");

    GeneratedInstance g;
    g.instance.n = 2;
    g.instance.values = S;
    g.instance.values.push_back(0);
    const int m1 = static_cast<int>(g.instance.values.size());
    GeneralCosts costs;
    costs.agent_costs.assign(2, std::vector<Cost>(m1, 0));
    for (int x = 0; x + 1 < m1; ++x) costs.agent_costs[1][x] = S[x];
    costs.agent_costs[1][m1 - 1] = T + 1;
    g.instance.cost_model = std::move(costs);
    g.threshold = T;
    g.contract = kPartitionContract;
    validate_instance(g.instance);
    return g;
}

GeneratedInstance gen_factor_hardness(const std::vector<Value>& S) {
    Value sum = 0;
    for (Value s : S)
        if (__builtin_add_overflow(sum, s, &sum))
            throw PreconditionError("gen_factor_hardness: multiset sum overflows");
    const bool valid = !S.empty() && S.size() % 2 == 0 && sum % 2 == 0 &&
                       std::all_of(S.begin(), S.end(), [&](Value s) { return s <= sum / 2; });
    if (!valid) return trivial_no_instance(kFactorHardnessContract);

    const Value T = sum / 2;
    const std::uint64_t m = S.size();
    Value two_t1 = 0, B = 0;
    if (__builtin_add_overflow(sum, Value{1}, &two_t1) ||
        __builtin_mul_overflow(m + 1, two_t1, &B))
        throw PreconditionError("gen_factor_hardness: shift base overflows");

    GeneratedInstance g;
    g.instance.n = 2;
    for (Value s : S) {
        Value shifted = 0;
        if (__builtin_add_overflow(s, B, &shifted))
            throw PreconditionError("gen_factor_hardness: shifted item overflows");
        g.instance.values.push_back(shifted);
    }
    g.instance.values.push_back(T + 1);
    g.instance.cost_model = FactorCosts{{0, 1}};
    Cost threshold = 0;
    if (__builtin_mul_overflow(m / 2, B, &threshold) ||
        __builtin_add_overflow(threshold, T, &threshold))
        throw PreconditionError("gen_factor_hardness: threshold overflows");
    g.threshold = threshold;
    g.contract = kFactorHardnessContract;
    validate_instance(g.instance);
    return g;
}

GeneratedInstance gen_from_bin_packing(const std::vector<Value>& sizes, Value B, int bins) {
    if (bins <= 0) throw PreconditionError("gen_from_bin_packing: bin count must be positive");
    Value sum = 0;
    for (Value s : sizes)
        if (__builtin_add_overflow(sum, s, &sum))
            throw PreconditionError("gen_from_bin_packing: size sum overflows");
    unsigned __int128 capacity = static_cast<unsigned __int128>(B) * bins;
    if (capacity != sum)
        throw PreconditionError("gen_from_bin_packing: sizes must sum to bins times capacity");
    if (std::any_of(sizes.begin(), sizes.end(), [&](Value s) { return s > B; }))
        return trivial_no_instance(kBinPackingContract);

    GeneratedInstance g;
    g.instance.n = bins + 1;
    g.instance.values = sizes;
    g.instance.values.push_back(B);
    g.instance.values.push_back(B);
    FactorCosts costs;
    costs.alphas.assign(bins + 1, 1);
    costs.alphas[0] = 0;
    g.instance.cost_model = std::move(costs);
    g.threshold = static_cast<Cost>(B) * bins;
    g.contract = kBinPackingContract;
    validate_instance(g.instance);
    return g;
}

std::vector<Value> gen_shift_equal_cardinality(const std::vector<Value>& S) {
    const Value T = half_of_even_sum(S, "gen_shift_equal_cardinality");
    Value shift = 0;
    if (__builtin_mul_overflow(static_cast<Value>(S.size()), T, &shift))
        throw PreconditionError("gen_shift_equal_cardinality: shift overflows");
    std::vector<Value> shifted;
    shifted.reserve(S.size());
    for (Value s : S) {
        Value v = 0;
        if (__builtin_add_overflow(s, shift, &v))
            throw PreconditionError("gen_shift_equal_cardinality: shifted element overflows");
        shifted.push_back(v);
    }
    return shifted;
}

GeneratedInstance gen_gadget_general(const std::vector<Value>& S, Cost rho) {
    if (rho < 2) throw PreconditionError("gen_gadget_general: rho must be at least 2");
    const Value T = half_of_even_sum(S, "gen_gadget_general");
    const int m = static_cast<int>(S.size());

    GeneratedInstance g;
    g.instance.n = 3;
    g.instance.values = S;
    g.instance.values.push_back(0);  // x_{m+1}
    g.instance.values.push_back(0);  // x_{m+2}
    g.instance.values.push_back(T);  // x*
    const int total = m + 3;
    GeneralCosts costs;
    costs.agent_costs.assign(3, std::vector<Cost>(total, 0));
    costs.agent_costs[0][m + 1] = rho;  // agent 1 pays for x_{m+2}
    costs.agent_costs[0][m + 2] = rho;  // ... and for x*
    costs.agent_costs[1][m] = rho;      // agent 2 pays for x_{m+1}
    costs.agent_costs[1][m + 2] = rho;  // ... and for x*
    std::fill(costs.agent_costs[2].begin(), costs.agent_costs[2].end(), rho);
    costs.agent_costs[2][m + 2] = 1;  // agent 3 takes x* cheaply
    g.instance.cost_model = std::move(costs);
    g.threshold = 1;
    g.contract =
        "if an equal-sum partition of the source multiset exists the minimum EFx cost equals the "
        "threshold, otherwise it is at least " +
        std::to_string(rho);
    validate_instance(g.instance);
    return g;
}

GeneratedInstance gen_gadget_factor(const std::vector<Value>& S) {
    const Value T = half_of_even_sum(S, "gen_gadget_factor");

    GeneratedInstance g;
    g.instance.n = 3;
    g.instance.values = S;
    g.instance.values.push_back(T);
    g.instance.values.push_back(T);
    g.instance.cost_model = FactorCosts{{0, 1, 1}};
    g.threshold = 2 * static_cast<Cost>(T);
    g.contract = kGadgetFactorContract;
    validate_instance(g.instance);
    return g;
}

Instance gen_random(int n, int m, Value vmax, RandomCostKind cost_kind, Cost cmax, int beta_cap,
                    std::uint64_t seed) {
    if (n <= 0) throw PreconditionError("gen_random: agent count must be positive");
    if (m < 0) throw PreconditionError("gen_random: item count must be non-negative");
    if (beta_cap < 0) throw PreconditionError("gen_random: beta cap must be non-negative");

    std::mt19937_64 rng(seed);
    Instance inst;
    inst.n = n;
    inst.values.reserve(m);
    if (beta_cap > 0) {
        std::vector<Value> palette(beta_cap);
        for (Value& v : palette) v = uniform_upto(rng, vmax);
        for (int x = 0; x < m; ++x)
            inst.values.push_back(palette[uniform_upto(rng, palette.size() - 1)]);
    } else {
        for (int x = 0; x < m; ++x) inst.values.push_back(uniform_upto(rng, vmax));
    }

    if (cost_kind == RandomCostKind::general) {
        GeneralCosts costs;
        costs.agent_costs.assign(n, std::vector<Cost>(m, 0));
        for (auto& row : costs.agent_costs)
            for (Cost& c : row) c = uniform_upto(rng, cmax);
        inst.cost_model = std::move(costs);
    } else {
        FactorCosts costs;
        costs.alphas.resize(n);
        for (Cost& a : costs.alphas) a = uniform_upto(rng, cmax);
        inst.cost_model = std::move(costs);
    }
    validate_instance(inst);
    return inst;
}

}  // namespace efx
