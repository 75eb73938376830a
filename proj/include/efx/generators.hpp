#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "efx/model.hpp"

namespace efx {

// Uniform draw in [0, bound] by masked rejection. Unlike the standard library
// distributions this is bit-identical across platforms, which the seeded
// generators and test suites rely on.
std::uint64_t uniform_upto(std::mt19937_64& rng, std::uint64_t bound);

struct GeneratedInstance {
    Instance instance;
    Cost threshold = 0;
    std::string contract;  // human-readable statement of the threshold semantics
};

// Two agents, items S plus one zero-value item; agent 1 is free, agent 2 pays
// item value except T+1 for the zero item, T = sum(S)/2. An equal-sum
// partition of S exists iff the minimum EFx cost is at most T.
GeneratedInstance gen_from_partition(const std::vector<Value>& S);

// Two-agent factor instance from a candidate equal-cardinality partition
// input: items s_i + B plus one item of value T+1, B = (m+1)(2T+1), alphas
// (0,1), threshold (m/2)B + T. Inputs violating the preconditions (|S| or
// sum(S) odd, or some s > T) map to a fixed trivial no-instance.
GeneratedInstance gen_factor_hardness(const std::vector<Value>& S);

// Factor instance from a bin-packing input: bins+1 agents with alphas
// (0,1,...,1), items = sizes plus two items of value B, threshold bins*B.
// The sizes pack into the bins iff the minimum EFx cost is at most the
// threshold. Oversized items map to a fixed trivial no-instance; a size sum
// different from bins*B is an error.
GeneratedInstance gen_from_bin_packing(const std::vector<Value>& sizes, Value B, int bins);

// Shifts every element by m*T (T = sum(S)/2), preserving equal-cardinality
// equal-sum partition status while concentrating weight; the shifted multiset
// sums to (m^2+2)T.
std::vector<Value> gen_shift_equal_cardinality(const std::vector<Value>& S);

// Three-agent general-cost gap gadget: items S, two zero-value items and one
// item of value T = sum(S)/2. If an equal-sum partition of S exists the
// minimum EFx cost is exactly 1 (the threshold); otherwise it is at least rho.
GeneratedInstance gen_gadget_general(const std::vector<Value>& S, Cost rho);

// Three-agent factor gap gadget: items S plus two items of value T, alphas
// (0,1,1). If an equal-cardinality equal-sum partition of S exists the
// minimum EFx cost equals the threshold 2T; it is never below 2T.
GeneratedInstance gen_gadget_factor(const std::vector<Value>& S);

enum class RandomCostKind { general, factor };

// Seeded, reproducible random instance: values uniform in [0, vmax] (drawn
// from a palette of at most beta_cap distinct values when beta_cap > 0),
// costs/factors uniform in [0, cmax]. Identical parameters and seed produce
// an identical instance on every platform.
Instance gen_random(int n, int m, Value vmax, RandomCostKind cost_kind, Cost cmax, int beta_cap,
                    std::uint64_t seed);

}  // namespace efx
