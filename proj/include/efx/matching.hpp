#pragma once

#include "efx/model.hpp"

namespace efx {

struct MatchingOptions {
    // Restrict each item to its m lowest-cost agents (ties by agent index).
    // Disabling keeps every agent as a candidate; the optimum must not change
    // (exercised by the pruning-safety tests).
    bool prune = true;
};

// Exact solver for the singleton regime: with n >= m agents and every item
// value positive, every EFx allocation gives each item its own agent, so the
// problem is a minimum-cost bipartite matching of items to agents. Unmatched
// agents receive empty bundles. Among equal-cost matchings the returned one
// has the lexicographically smallest (item, agent) pair sequence. Throws
// PreconditionError when n < m or some item value is zero.
SolveResult solve_singleton_matching(const Instance& inst, const MatchingOptions& opts = {});

}  // namespace efx
