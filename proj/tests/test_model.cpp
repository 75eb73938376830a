#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <limits>

#include "efx/model.hpp"

using namespace efx;

namespace {

Instance general_instance(int n, std::vector<Value> values,
                          std::vector<std::vector<Cost>> rows) {
    Instance inst;
    inst.n = n;
    inst.values = std::move(values);
    inst.cost_model = GeneralCosts{std::move(rows)};
    return inst;
}

Instance factor_instance(int n, std::vector<Value> values, std::vector<Cost> alphas) {
    Instance inst;
    inst.n = n;
    inst.values = std::move(values);
    inst.cost_model = FactorCosts{std::move(alphas)};
    return inst;
}

}  // namespace

TEST_CASE("validate_instance accepts well-formed instances") {
    CHECK_NOTHROW(validate_instance(general_instance(2, {1, 2}, {{0, 1}, {2, 3}})));
    CHECK_NOTHROW(validate_instance(factor_instance(3, {5, 0, 5}, {0, 1, 2})));
    CHECK_NOTHROW(validate_instance(factor_instance(1, {}, {7})));  // no items is fine
}

TEST_CASE("validate_instance rejects bad shapes with located errors") {
    Instance inst = general_instance(2, {1, 2}, {{0, 1}, {2, 3}});
    inst.n = 0;
    CHECK_THROWS_AS(validate_instance(inst), ParseError);

    try {
        validate_instance(general_instance(2, {1, 2}, {{0, 1}}));  // one row missing
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseErrorKind::dimension_mismatch);
        CHECK(e.where == "cost_model.costs");
    }

    try {
        validate_instance(general_instance(2, {1, 2}, {{0, 1}, {2}}));  // short row
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseErrorKind::dimension_mismatch);
        CHECK(e.where == "cost_model.costs[1]");
    }

    try {
        validate_instance(factor_instance(3, {1}, {0, 1}));  // one alpha missing
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseErrorKind::dimension_mismatch);
        CHECK(e.where == "cost_model.alphas");
    }
}

TEST_CASE("validate_instance guards 64-bit accumulation") {
    const std::uint64_t big = std::numeric_limits<std::uint64_t>::max();

    try {
        validate_instance(factor_instance(1, {big, 1}, {0}));  // value sum overflows
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseErrorKind::overflow_risk);
        CHECK(e.where == "values");
    }

    try {
        // alphas * total value would not fit.
        validate_instance(factor_instance(1, {big / 2 + 1}, {2}));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseErrorKind::overflow_risk);
        CHECK(e.where == "cost_model.alphas");
    }

    try {
        // Each guard in isolation passes (m * cmax = 2^63, value sum = 8) but
        // the mixed product n * m * vmax * cmax does not fit.
        const Cost huge = std::uint64_t{1} << 62;
        validate_instance(general_instance(2, {4, 4}, {{huge, 0}, {0, 0}}));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseErrorKind::overflow_risk);
        CHECK(e.where == "cost_model");
    }
}

TEST_CASE("validate_allocation checks length and owner range") {
    const Instance inst = factor_instance(2, {1, 2, 3}, {0, 1});
    CHECK_NOTHROW(validate_allocation(inst, Allocation{{0, 1, 0}}));
    CHECK_THROWS_AS(validate_allocation(inst, Allocation{{0, 1}}), ParseError);
    CHECK_THROWS_AS(validate_allocation(inst, Allocation{{0, 1, 2}}), ParseError);
    CHECK_THROWS_AS(validate_allocation(inst, Allocation{{0, -1, 0}}), ParseError);
}

TEST_CASE("item_cost reads the table or multiplies the factor") {
    const Instance g = general_instance(2, {1, 2}, {{3, 4}, {5, 6}});
    CHECK(item_cost(g, 0, 0) == 3);
    CHECK(item_cost(g, 1, 1) == 6);

    const Instance f = factor_instance(2, {7, 0}, {2, 5});
    CHECK(item_cost(f, 0, 0) == 14);
    CHECK(item_cost(f, 1, 0) == 35);
    CHECK(item_cost(f, 1, 1) == 0);
}

TEST_CASE("value and cost aggregates") {
    const Instance inst = general_instance(2, {4, 1, 3}, {{1, 2, 3}, {10, 20, 30}});
    CHECK(total_value(inst) == 8);
    CHECK(bundle_value(inst, {0, 2}) == 7);
    CHECK(bundle_value(inst, {}) == 0);

    const Allocation alloc{{0, 1, 0}};
    CHECK(bundle_values(inst, alloc) == std::vector<Value>{7, 1});
    const auto bs = bundles(inst, alloc);
    CHECK(bs[0] == std::vector<int>{0, 2});
    CHECK(bs[1] == std::vector<int>{1});
    CHECK(allocation_cost(inst, alloc) == 1 + 20 + 3);
}

TEST_CASE("max_cost_entry spans both models") {
    CHECK(max_cost_entry(general_instance(2, {1}, {{4}, {9}})) == 9);
    CHECK(max_cost_entry(factor_instance(3, {1}, {0, 7, 2})) == 7);
    CHECK(max_cost_entry(general_instance(1, {}, {{}})) == 0);
}
