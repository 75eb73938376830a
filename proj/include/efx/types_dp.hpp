#pragma once

#include <cstdint>
#include <vector>

#include "efx/model.hpp"

namespace efx {

// Items grouped by equal value: s holds the distinct values ascending, mult
// the matching positive multiplicities. The pair determines the value multiset.
struct TypeProfile {
    std::vector<Value> s;
    std::vector<int> mult;
    int beta() const { return static_cast<int>(s.size()); }
};

TypeProfile type_profile(const Instance& inst);

// Value a bundle with per-type counts x keeps after dropping one copy of its
// smallest present type; 0 for the empty configuration.
Value bundle_bound(const TypeProfile& profile, const std::vector<int>& x);

// Whether a bundle with counts z can stand next to a designated bundle of the
// given bound: z must not strongly envy it (value >= bound) and must not beat
// it as the value-minus-min maximizer (value - min <= bound). The empty
// configuration qualifies iff bound == 0.
bool config_satisfies(const TypeProfile& profile, const std::vector<int>& z, Value bound);

struct TypeDpOptions {
    // Soft cap on explored configurations/transitions; exceeding it (or a
    // configuration space too large to index) aborts with BudgetError.
    std::uint64_t budget = 10'000'000;
    // Process the inner agents in reversed order. The optimal cost must not
    // change; exercised by the order-independence tests.
    bool reverse_inner_order = false;
};

// Exact minimum-cost EFx solver for factor costs, parameterized by the number
// of distinct item values. Enumerates a designated agent j and its bundle
// configuration x (the bundle asserted to maximize value-minus-min), then
// assigns the remaining items to the other agents (sorted by non-increasing
// factor, ties by index) via dynamic programming over per-type counts,
// admitting only configurations compatible with bundle_bound(x). The returned
// allocation is re-verified with is_efx; stats expose the winning bound and
// designated agent.
SolveResult solve_type_dp(const Instance& inst, const TypeDpOptions& opts = {});

}  // namespace efx
