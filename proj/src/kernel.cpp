#include "efx/kernel.hpp"

#include <algorithm>
#include <numeric>

#include "efx/fairness.hpp"

namespace efx {

namespace {

// The m agents with the lowest key (ties by agent index), ascending by index.
std::vector<int> cheapest_agents(int n, int m, const std::vector<Cost>& key) {
    std::vector<int> agents(n);
    std::iota(agents.begin(), agents.end(), 0);
    const int keep = std::min(n, m);
    std::partial_sort(agents.begin(), agents.begin() + keep, agents.end(), [&](int a, int b) {
        if (key[a] != key[b]) return key[a] < key[b];
        return a < b;
    });
    agents.resize(keep);
    return agents;
}

}  // namespace

KernelMap kernelize(const Instance& inst) {
    validate_instance(inst);
    const int n = inst.n;
    const int m = inst.item_count();

    std::vector<char> keep(n, 0);
    bool any_rule = false;
    std::vector<Cost> key(n);

    for (int x = 0; x < m; ++x) {
        if (inst.values[x] == 0) continue;
        any_rule = true;
        for (int a = 0; a < n; ++a) key[a] = item_cost(inst, a, x);
        for (int a : cheapest_agents(n, m, key)) keep[a] = 1;
    }
    for (int x = 0; x < m; ++x) {
        for (int y = x + 1; y < m; ++y) {
            if (inst.values[x] == 0 && inst.values[y] == 0) continue;
            any_rule = true;
            for (int a = 0; a < n; ++a) key[a] = item_cost(inst, a, x) + item_cost(inst, a, y);
            for (int a : cheapest_agents(n, m, key)) keep[a] = 1;
        }
    }
    if (!any_rule) std::fill(keep.begin(), keep.end(), 1);

    KernelMap kmap;
    for (int a = 0; a < n; ++a)
        if (keep[a]) kmap.retained.push_back(a);

    kmap.reduced.n = static_cast<int>(kmap.retained.size());
    kmap.reduced.values = inst.values;
    if (const auto* gc = std::get_if<GeneralCosts>(&inst.cost_model)) {
        GeneralCosts reduced_costs;
        for (int a : kmap.retained) reduced_costs.agent_costs.push_back(gc->agent_costs[a]);
        kmap.reduced.cost_model = std::move(reduced_costs);
    } else {
        const auto& fc = std::get<FactorCosts>(inst.cost_model);
        FactorCosts reduced_costs;
        for (int a : kmap.retained) reduced_costs.alphas.push_back(fc.alphas[a]);
        kmap.reduced.cost_model = std::move(reduced_costs);
    }
    return kmap;
}

LiftedAllocation lift_allocation(const Instance& original, const KernelMap& kmap,
                                 const Allocation& reduced_alloc) {
    validate_instance(original);
    validate_allocation(kmap.reduced, reduced_alloc);
    if (static_cast<int>(kmap.retained.size()) != kmap.reduced.n)
        throw PreconditionError("kernel map retained list disagrees with its reduced instance");
    for (int a : kmap.retained)
        if (a < 0 || a >= original.n)
            throw PreconditionError("kernel map retains an agent outside the original instance");

    LiftedAllocation lifted;
    lifted.allocation.owner.resize(reduced_alloc.owner.size());
    for (std::size_t x = 0; x < reduced_alloc.owner.size(); ++x)
        lifted.allocation.owner[x] = kmap.retained[reduced_alloc.owner[x]];
    validate_allocation(original, lifted.allocation);
    lifted.efx = is_efx(original, lifted.allocation);
    return lifted;
}

}  // namespace efx
