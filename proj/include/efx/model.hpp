#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace efx {

using Value = std::uint64_t;
using Cost = std::uint64_t;

// Error taxonomy:
//   ParseError        bad input document or malformed instance shape
//   PreconditionError operation not applicable to this instance
//   BudgetError       instance too large for the requested method
//   InternalError     a solver invariant failed; indicates a bug, never bad input
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ParseErrorKind {
    malformed,
    dimension_mismatch,
    negative_number,
    overflow_risk,
};

struct ParseError : Error {
    ParseErrorKind kind;
    std::string where;  // dotted path into the document, e.g. "cost_model.costs[2]"
    ParseError(ParseErrorKind k, std::string w, const std::string& msg)
        : Error(msg + " at " + w), kind(k), where(std::move(w)) {}
};

struct PreconditionError : Error {
    using Error::Error;
};
struct BudgetError : Error {
    using Error::Error;
};
struct InternalError : Error {
    using Error::Error;
};

// Cost of a bundle is always additive over its items.
// General: an explicit per-agent per-item table. Factor: cost[agent][item] = alphas[agent] * v(item).
struct GeneralCosts {
    std::vector<std::vector<Cost>> agent_costs;  // [agent][item]
};
struct FactorCosts {
    std::vector<Cost> alphas;  // [agent]
};
using CostModel = std::variant<GeneralCosts, FactorCosts>;

// Identical additive valuations: one value per item, shared by all agents.
// All indices are 0-based. validate_instance() must accept any Instance handed
// to a solver; it enforces shape and the arithmetic-overflow guards that let
// every solver accumulate values and costs in plain uint64_t.
struct Instance {
    int n = 0;  // number of agents, >= 1
    std::vector<Value> values;
    CostModel cost_model;

    int item_count() const { return static_cast<int>(values.size()); }
    bool is_factor() const { return std::holds_alternative<FactorCosts>(cost_model); }
};

// owner[item] = agent receiving that item.
struct Allocation {
    std::vector<int> owner;

    friend bool operator==(const Allocation& a, const Allocation& b) { return a.owner == b.owner; }
};

struct SolveResult {
    Cost cost = 0;
    Allocation allocation;
    std::string algorithm;
    std::map<std::string, std::uint64_t> stats;
};

// Shape and overflow validation; throws ParseError.
void validate_instance(const Instance& inst);
// Owner length/range validation against an instance; throws ParseError.
void validate_allocation(const Instance& inst, const Allocation& alloc);

Cost item_cost(const Instance& inst, int agent, int item);
Value total_value(const Instance& inst);
Value bundle_value(const Instance& inst, const std::vector<int>& items);
std::vector<Value> bundle_values(const Instance& inst, const Allocation& alloc);
std::vector<std::vector<int>> bundles(const Instance& inst, const Allocation& alloc);
Cost allocation_cost(const Instance& inst, const Allocation& alloc);

// Largest cost entry (General) or factor (Factor); 0 for n = 0 tables.
Cost max_cost_entry(const Instance& inst);

}  // namespace efx
