#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "efx/model.hpp"

namespace efx {

// One differential or structural suite run: `instances` cases were executed,
// each either agreeing with its ground truth or counted as a mismatch.
struct SuiteReport {
    std::string suite;
    std::uint64_t instances = 0;
    std::uint64_t agreements = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t wall_ms = 0;
    std::string first_mismatch;  // diagnostic dump of the first disagreeing case
    bool all_agree() const { return mismatches == 0 && instances == agreements; }
};

// Ground-truth enumerators for the reduction suites. Deliberately independent
// of every solver: plain subset-sum / packing search over the raw inputs.
bool has_equal_sum_partition(const std::vector<Value>& S);
bool has_equal_cardinality_partition(const std::vector<Value>& S);
bool bin_packing_fits(const std::vector<Value>& sizes, Value capacity, int bins);

// Registered suites, in the order `all` runs them:
//   dp-grid     exhaustive two-agent sweep, value-vector solver vs. search
//   dp-random   seeded random instances, value-vector solver vs. search
//   types       seeded factor instances, type solver vs. search
//   matching    seeded singleton instances, assignment solver vs. search
//   kernel      seeded wide instances, reduced-vs-original optima and lifting
//   thresholds  reduction families vs. independent enumerators
//   structural  bundle-gap and value-floor invariants over every EFx allocation
const std::vector<std::string>& bench_suite_names();

// Runs one suite. The exhaustive suites ignore `seed`. Throws
// PreconditionError for an unknown name.
SuiteReport run_bench_suite(const std::string& name, std::uint64_t seed);

}  // namespace efx
