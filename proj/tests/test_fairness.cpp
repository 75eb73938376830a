#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "efx/fairness.hpp"

using namespace efx;

namespace {

Instance factor_instance(int n, std::vector<Value> values, std::vector<Cost> alphas) {
    Instance inst;
    inst.n = n;
    inst.values = std::move(values);
    inst.cost_model = FactorCosts{std::move(alphas)};
    return inst;
}

// Four agents, eight items of value 15 and three of value 10.
Instance relief_instance() {
    return factor_instance(4, {15, 15, 15, 15, 15, 15, 15, 15, 10, 10, 10}, {0, 1, 1, 2});
}

}  // namespace

TEST_CASE("rationals normalize and compare exactly") {
    CHECK(make_rational(6, 4) == Rational{3, 2});
    CHECK(make_rational(0, 5) == Rational{0, 1});

    CHECK(value_below(1, make_rational(3, 2)));
    CHECK_FALSE(value_below(2, make_rational(3, 2)));
    CHECK(value_at_least(2, make_rational(3, 2)));
    CHECK_FALSE(value_at_least(1, make_rational(3, 2)));

    // Cross multiplication must not wrap for values near the 64-bit edge.
    const Value big = std::uint64_t{1} << 62;
    CHECK(value_at_least(big, make_rational(big - 1, 1)));
    CHECK(value_below(big - 1, make_rational(big, 1)));
    CHECK(value_at_least(3, make_rational(big * 2 + 1, big)));  // 3 >= ~2
    CHECK(value_below(2, make_rational(big * 2 + 1, big)));
}

TEST_CASE("strong envy drops the envied bundle's least item") {
    const Instance inst = factor_instance(2, {4, 5, 0}, {0, 0});

    // Bundles {4, 0} vs {5}: 4 >= 5 - 5, no strong envy either way.
    CHECK_FALSE(strongly_envies(inst, Allocation{{0, 1, 0}}, 0, 1));
    CHECK_FALSE(strongly_envies(inst, Allocation{{0, 1, 0}}, 1, 0));

    // Bundles {4} vs {5, 0}: the least item is worth 0, so the comparison is
    // against the full bundle value 5 and the envy stands.
    CHECK(strongly_envies(inst, Allocation{{0, 1, 1}}, 0, 1));
}

TEST_CASE("empty bundles are never strongly envied") {
    const Instance inst = factor_instance(2, {9}, {0, 0});
    const Allocation alloc{{0}};
    CHECK_FALSE(strongly_envies(inst, alloc, 1, 0));  // 0 >= 9 - 9
    CHECK_FALSE(strongly_envies(inst, alloc, 0, 1));  // nothing to envy
    CHECK(is_efx(inst, alloc));
}

TEST_CASE("check_efx returns the lexicographically first witness") {
    // Bundles: agent 0 = {}, agent 1 = {3, 3}, agent 2 = {3, 3}. Both envy
    // pairs (0,1) and (0,2) are violations; the witness must pick (0,1) and
    // the lowest-index least item of bundle 1.
    const Instance inst = factor_instance(3, {3, 3, 3, 3}, {0, 0, 0});
    const Allocation alloc{{1, 1, 2, 2}};
    const auto w = check_efx(inst, alloc);
    REQUIRE(w.has_value());
    CHECK(w->envier == 0);
    CHECK(w->envied == 1);
    CHECK(w->removed_item == 0);
    CHECK_FALSE(is_efx(inst, alloc));
}

TEST_CASE("a balanced relief allocation is EFx") {
    const Instance inst = relief_instance();
    // Bundle values 40 / 40 / 40 / 30; the 30-bundle holds two 15s.
    const Allocation alloc{{0, 0, 1, 1, 2, 2, 3, 3, 0, 1, 2}};
    CHECK(is_efx(inst, alloc));
    CHECK_FALSE(check_efx(inst, alloc).has_value());
    CHECK(max_gap(inst, alloc) == 10);
}

TEST_CASE("max_gap edge cases") {
    const Instance inst = factor_instance(1, {5, 5}, {0});
    CHECK(max_gap(inst, Allocation{{0, 0}}) == 0);  // single agent

    const Instance two = factor_instance(2, {5, 1}, {0, 0});
    CHECK(max_gap(two, Allocation{{0, 1}}) == 4);
}

TEST_CASE("EFx value floor") {
    // v(M) = 150, the three largest values sum to 45: floor = 105/4.
    const Instance inst = relief_instance();
    CHECK(efx_lower_bound(inst) == make_rational(105, 4));
    CHECK(value_at_least(30, efx_lower_bound(inst)));
    CHECK(value_below(26, efx_lower_bound(inst)));

    // Clamped at zero when the top items dominate the total.
    const Instance skew = factor_instance(3, {100, 1}, {0, 0, 0});
    CHECK(efx_lower_bound(skew) == make_rational(0, 1));

    // Fewer items than agents - 1: every value is subtracted.
    const Instance sparse = factor_instance(4, {8, 4}, {0, 0, 0, 0});
    CHECK(efx_lower_bound(sparse) == make_rational(0, 1));
}
