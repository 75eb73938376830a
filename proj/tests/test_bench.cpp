#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "efx/bench.hpp"

using namespace efx;

TEST_CASE("equal-sum partition enumerator") {
    CHECK(has_equal_sum_partition({1, 2, 3, 4}));
    CHECK(has_equal_sum_partition({1, 1}));
    CHECK(has_equal_sum_partition({2, 1, 1, 4}));
    CHECK_FALSE(has_equal_sum_partition({1, 1, 4}));
    CHECK_FALSE(has_equal_sum_partition({1, 2}));  // odd sum
    CHECK_FALSE(has_equal_sum_partition({5}));
    CHECK(has_equal_sum_partition({}));  // empty vs empty
}

TEST_CASE("equal-cardinality equal-sum partition enumerator") {
    CHECK(has_equal_cardinality_partition({1, 1}));
    CHECK(has_equal_cardinality_partition({2, 2}));
    CHECK(has_equal_cardinality_partition({1, 1, 1, 1}));
    CHECK(has_equal_cardinality_partition({1, 2, 1, 2}));
    CHECK(has_equal_cardinality_partition({1, 3, 2, 2}));    // {1,3} vs {2,2}
    CHECK_FALSE(has_equal_cardinality_partition({1, 3}));    // sums differ
    CHECK_FALSE(has_equal_cardinality_partition({1, 1, 1, 3}));
    CHECK_FALSE(has_equal_cardinality_partition({1, 1, 2}));  // odd count
    CHECK_FALSE(has_equal_cardinality_partition({2, 4, 1, 1}));  // only 2+4 hits half
    CHECK(has_equal_cardinality_partition({}));
}

TEST_CASE("bin packing enumerator") {
    CHECK(bin_packing_fits({2, 2, 2, 2, 2, 2}, 4, 3));
    CHECK(bin_packing_fits({3, 3}, 3, 2));
    CHECK_FALSE(bin_packing_fits({4, 4, 4}, 6, 2));
    CHECK(bin_packing_fits({1, 1, 1}, 3, 1));
    CHECK_FALSE(bin_packing_fits({4}, 3, 2));  // single oversized item
    CHECK(bin_packing_fits({}, 1, 1));
}

TEST_CASE("suite registry") {
    const auto& names = bench_suite_names();
    const std::vector<std::string> expected = {"dp-grid",  "dp-random",  "types",     "matching",
                                               "kernel",   "thresholds", "structural"};
    CHECK(names == expected);
    CHECK_THROWS_AS(run_bench_suite("no-such-suite", 1), PreconditionError);
}

TEST_CASE("report bookkeeping") {
    SuiteReport r;
    r.instances = 3;
    r.agreements = 3;
    CHECK(r.all_agree());
    r.mismatches = 1;
    CHECK_FALSE(r.all_agree());
    r.mismatches = 0;
    r.agreements = 2;  // an instance neither agreed nor mismatched: still bad
    CHECK_FALSE(r.all_agree());
}

// The full exhaustive grid runs in the acceptance binary; here every seeded
// suite gets one pass to catch regressions in the harness itself.
TEST_CASE("seeded suites agree end to end") {
    for (const char* name : {"dp-random", "types", "matching", "kernel", "thresholds",
                             "structural"}) {
        CAPTURE(name);
        const SuiteReport r = run_bench_suite(name, 1);
        CHECK(r.suite == name);
        CHECK(r.instances > 0);
        CHECK(r.all_agree());
        CHECK(r.first_mismatch.empty());
    }
}
