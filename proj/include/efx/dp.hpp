#pragma once

#include "efx/model.hpp"

namespace efx {

// Layered table of exactly achievable value vectors: layer i holds every
// vector of per-agent bundle values realizable by assigning the i smallest
// items (all vectors in a layer share the same component sum). Feasibility of
// a demand vector z is a dominance query against the exact set; the downward
// closure is implicit.
struct FeasibilityFrontier {
    struct Layer {
        std::vector<Value> flat;       // states, stride n, insertion order
        std::vector<Value> coord_max;  // per-coordinate maximum, for fast rejection
        Value sum = 0;                 // common component sum of this layer's states
        std::size_t count(int n) const { return n == 0 ? 0 : flat.size() / n; }
    };

    int n = 0;
    std::vector<Layer> layers;  // size m + 1

    // True iff some achievable vector dominates z componentwise.
    bool feasible(int layer, const std::vector<Value>& z) const;
    std::uint64_t state_count() const;
};

// Throws BudgetError when any layer would exceed `budget` states.
FeasibilityFrontier build_feasibility_frontier(const Instance& inst,
                                               std::uint64_t budget = 10'000'000);

struct DpOptions {
    std::uint64_t budget = 10'000'000;  // per-layer state cap
    // Drop states that cannot lift every bundle to the EFx value floor.
    bool lower_bound_prune = false;
    // Testing hook: skip the dense two-agent specialization.
    bool force_general_path = false;
    // When false, skips the stats map and wall-clock reads; the differential
    // suites call this millions of times and only want cost and owners.
    bool collect_stats = true;
};

// Exact minimum-cost EFx solver over per-agent value vectors. Items are
// assigned in descending value order (ties by original index), so the last
// item an agent receives is its bundle minimum. A state is the value vector
// together with an obligation: the largest pre-receipt owner value seen so
// far. A completed assignment is EFx exactly when every final bundle value
// reaches the obligation, and a state is kept only while the remaining items
// can still cover the shortfall (a frontier dominance query). Among
// equal-cost optima, returns the lexicographically smallest owner sequence
// (the same allocation solve_brute reports). The reconstruction is
// re-verified with is_efx; failure raises InternalError, which doubles as a
// falsification detector for the table's sufficiency.
SolveResult solve_value_vector_dp(const Instance& inst, const DpOptions& opts = {});

}  // namespace efx
