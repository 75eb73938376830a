#pragma once

#include <vector>

#include "efx/model.hpp"

namespace efx {

struct KernelMap {
    std::vector<int> retained;  // original agent indices, strictly increasing
    Instance reduced;           // the instance restricted to those agents
};

// Agent-count kernelization. Retains, for every positively valued item, its m
// lowest-cost agents, and for every unordered item pair with at least one
// positive value, the m lowest-cost agents for the pair (additive pair cost;
// ties by agent index). When no rule applies (no positive item), every agent
// is retained. |retained| <= min(n, m^2 + m * C(m,2)).
KernelMap kernelize(const Instance& inst);

struct LiftedAllocation {
    Allocation allocation;
    bool efx = false;  // verification outcome against the original instance
};

// Maps an allocation over the reduced instance back to the original agent
// indices; non-retained agents receive empty bundles. The lift is verified
// with is_efx against the original instance and the outcome reported.
LiftedAllocation lift_allocation(const Instance& original, const KernelMap& kmap,
                                 const Allocation& reduced_alloc);

}  // namespace efx
