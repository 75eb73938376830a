#include "efx/model.hpp"

#include <algorithm>

namespace efx {

namespace {

bool add_overflows(std::uint64_t a, std::uint64_t b, std::uint64_t* out) {
    return __builtin_add_overflow(a, b, out);
}

bool mul_overflows(std::uint64_t a, std::uint64_t b, std::uint64_t* out) {
    return __builtin_mul_overflow(a, b, out);
}

[[noreturn]] void dim_error(const std::string& where, const std::string& msg) {
    throw ParseError(ParseErrorKind::dimension_mismatch, where, msg);
}

[[noreturn]] void overflow_error(const std::string& where, const std::string& msg) {
    throw ParseError(ParseErrorKind::overflow_risk, where, msg);
}

}  // namespace

void validate_instance(const Instance& inst) {
    if (inst.n < 1) dim_error("n", "agent count must be at least 1");
    const std::size_t m = inst.values.size();

    Value vmax = 0;
    Value vtotal = 0;
    for (std::size_t i = 0; i < m; ++i) {
        vmax = std::max(vmax, inst.values[i]);
        if (add_overflows(vtotal, inst.values[i], &vtotal))
            overflow_error("values", "total item value exceeds 64-bit range");
    }

    Cost cmax = 0;
    if (const auto* g = std::get_if<GeneralCosts>(&inst.cost_model)) {
        if (g->agent_costs.size() != static_cast<std::size_t>(inst.n))
            dim_error("cost_model.costs", "expected one cost row per agent");
        for (std::size_t a = 0; a < g->agent_costs.size(); ++a) {
            if (g->agent_costs[a].size() != m)
                dim_error("cost_model.costs[" + std::to_string(a) + "]",
                          "expected one cost entry per item");
            for (Cost c : g->agent_costs[a]) cmax = std::max(cmax, c);
        }
        // Any allocation cost is bounded by m * cmax; that sum must be representable.
        std::uint64_t bound;
        if (mul_overflows(m, cmax, &bound))
            overflow_error("cost_model.costs", "worst-case allocation cost exceeds 64-bit range");
    } else {
        const auto& f = std::get<FactorCosts>(inst.cost_model);
        if (f.alphas.size() != static_cast<std::size_t>(inst.n))
            dim_error("cost_model.alphas", "expected one factor per agent");
        for (Cost a : f.alphas) cmax = std::max(cmax, a);
        std::uint64_t bound;
        if (mul_overflows(cmax, vtotal, &bound))
            overflow_error("cost_model.alphas", "worst-case allocation cost exceeds 64-bit range");
    }

    // Coarse guard used by every solver: n * m * vmax * cmax must fit, so any
    // intermediate mixing of counts, values and costs stays inside uint64_t.
    std::uint64_t prod = static_cast<std::uint64_t>(inst.n);
    for (std::uint64_t factor : {static_cast<std::uint64_t>(m), vmax, cmax}) {
        if (factor == 0) continue;
        if (mul_overflows(prod, factor, &prod))
            overflow_error("cost_model", "n * m * max_value * max_cost exceeds 64-bit range");
    }
}

void validate_allocation(const Instance& inst, const Allocation& alloc) {
    if (alloc.owner.size() != inst.values.size())
        dim_error("owner", "expected one owner per item");
    for (std::size_t i = 0; i < alloc.owner.size(); ++i) {
        if (alloc.owner[i] < 0 || alloc.owner[i] >= inst.n)
            dim_error("owner[" + std::to_string(i) + "]", "agent index out of range");
    }
}

Cost item_cost(const Instance& inst, int agent, int item) {
    if (const auto* g = std::get_if<GeneralCosts>(&inst.cost_model))
        return g->agent_costs[agent][item];
    return std::get<FactorCosts>(inst.cost_model).alphas[agent] * inst.values[item];
}

Value total_value(const Instance& inst) {
    Value t = 0;
    for (Value v : inst.values) t += v;
    return t;
}

Value bundle_value(const Instance& inst, const std::vector<int>& items) {
    Value t = 0;
    for (int i : items) t += inst.values[i];
    return t;
}

std::vector<Value> bundle_values(const Instance& inst, const Allocation& alloc) {
    std::vector<Value> bv(inst.n, 0);
    for (std::size_t i = 0; i < alloc.owner.size(); ++i) bv[alloc.owner[i]] += inst.values[i];
    return bv;
}

std::vector<std::vector<int>> bundles(const Instance& inst, const Allocation& alloc) {
    std::vector<std::vector<int>> out(inst.n);
    for (std::size_t i = 0; i < alloc.owner.size(); ++i)
        out[alloc.owner[i]].push_back(static_cast<int>(i));
    return out;
}

Cost allocation_cost(const Instance& inst, const Allocation& alloc) {
    Cost t = 0;
    for (std::size_t i = 0; i < alloc.owner.size(); ++i)
        t += item_cost(inst, alloc.owner[i], static_cast<int>(i));
    return t;
}

Cost max_cost_entry(const Instance& inst) {
    Cost cmax = 0;
    if (const auto* g = std::get_if<GeneralCosts>(&inst.cost_model)) {
        for (const auto& row : g->agent_costs)
            for (Cost c : row) cmax = std::max(cmax, c);
    } else {
        for (Cost a : std::get<FactorCosts>(inst.cost_model).alphas) cmax = std::max(cmax, a);
    }
    return cmax;
}

}  // namespace efx
