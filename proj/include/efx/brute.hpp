#pragma once

#include <functional>

#include "efx/model.hpp"

namespace efx {

struct BruteOptions {
    std::uint64_t budget = 100'000'000;  // max assignments to enumerate (n^m)
    int threads = 1;
    // Skip subtrees that cannot lift every bundle to the EFx value floor.
    // Off by default so the solver stays a plain oracle.
    bool lower_bound_prune = false;
    // When false, skips the stats map and wall-clock reads; the differential
    // suites call this millions of times and only want cost and owners.
    bool collect_stats = true;
};

// Exhaustive search over all n^m assignments in lexicographic owner order
// (item 0 is the most significant digit). Returns the first minimum-cost EFx
// allocation found, i.e. the lexicographically smallest among ties.
// Throws BudgetError when n^m exceeds the budget.
SolveResult solve_brute(const Instance& inst, const BruteOptions& opts = {});

// Visits every EFx allocation in lexicographic owner order.
void enumerate_efx(const Instance& inst, std::uint64_t budget,
                   const std::function<void(const Allocation&)>& visit);
std::vector<Allocation> enumerate_efx(const Instance& inst, std::uint64_t budget = 100'000'000);

}  // namespace efx
