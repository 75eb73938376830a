#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "efx/brute.hpp"
#include "efx/fairness.hpp"
#include "efx/generators.hpp"
#include "efx/types_dp.hpp"

using namespace efx;

namespace {

Instance factor_instance(int n, std::vector<Value> values, std::vector<Cost> alphas) {
    Instance inst;
    inst.n = n;
    inst.values = std::move(values);
    inst.cost_model = FactorCosts{std::move(alphas)};
    return inst;
}

}  // namespace

TEST_CASE("type profile groups equal values ascending") {
    const Instance inst = factor_instance(2, {15, 15, 10}, {0, 1});
    const TypeProfile p = type_profile(inst);
    CHECK(p.s == std::vector<Value>{10, 15});
    CHECK(p.mult == std::vector<int>{1, 2});
    CHECK(p.beta() == 2);

    const Instance none = factor_instance(2, {}, {0, 1});
    CHECK(type_profile(none).beta() == 0);
}

TEST_CASE("bundle bound drops one copy of the smallest present type") {
    const Instance inst = factor_instance(2, {15, 15, 15, 10}, {0, 1});
    const TypeProfile p = type_profile(inst);  // s = {10, 15}, mult = {1, 3}
    // x counts items per type, aligned with p.s.
    CHECK(bundle_bound(p, {0, 3}) == 30);  // 45 - 15
    CHECK(bundle_bound(p, {1, 2}) == 30);  // 40 - 10
    CHECK(bundle_bound(p, {0, 0}) == 0);
}

TEST_CASE("config_satisfies enforces both sides of the bound") {
    const Instance inst = factor_instance(2, {15, 15, 15, 10}, {0, 1});
    const TypeProfile p = type_profile(inst);
    CHECK(config_satisfies(p, {1, 2}, 30));        // value 40 >= 30, 40 - 10 <= 30
    CHECK_FALSE(config_satisfies(p, {0, 1}, 30));  // value 15 < 30: strong envy
    CHECK_FALSE(config_satisfies(p, {1, 3}, 30));  // 55 - 10 > 30: beats the bound
    CHECK(config_satisfies(p, {0, 0}, 0));         // empty bundle needs bound 0
    CHECK_FALSE(config_satisfies(p, {0, 0}, 10));
}

TEST_CASE("one type, free agent takes half") {
    // Four items of value 5, alphas (0,1): the free agent cannot take
    // everything (EFx), so two items land on the paying agent.
    const Instance inst = factor_instance(2, {5, 5, 5, 5}, {0, 1});
    const SolveResult r = solve_type_dp(inst);
    CHECK(r.cost == 10);
    CHECK(r.algorithm == "types");
    CHECK(is_efx(inst, r.allocation));
    CHECK(allocation_cost(inst, r.allocation) == 10);
}

TEST_CASE("relief instance optimum") {
    const Instance inst =
        factor_instance(4, {15, 15, 15, 15, 15, 15, 15, 15, 10, 10, 10}, {0, 1, 1, 2});
    const SolveResult r = solve_type_dp(inst);
    CHECK(r.cost == 135);
    CHECK(is_efx(inst, r.allocation));
    CHECK(r.stats.count("bound") == 1);
    CHECK(r.stats.count("designated_agent") == 1);
}

TEST_CASE("type solver matches exhaustive search") {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        const int n = 1 + static_cast<int>(seed % 4);
        const int beta_cap = 1 + static_cast<int>(seed % 3);
        const Instance inst = gen_random(n, 7, 9, RandomCostKind::factor, 4, beta_cap, seed);
        const Cost want = solve_brute(inst).cost;
        const SolveResult got = solve_type_dp(inst);
        CHECK(got.cost == want);
        CHECK(is_efx(inst, got.allocation));
    }
}

TEST_CASE("inner agent order does not change the optimum") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const int n = 2 + static_cast<int>(seed % 3);
        const Instance inst = gen_random(n, 8, 9, RandomCostKind::factor, 4, 2, seed);
        TypeDpOptions fwd;
        TypeDpOptions rev;
        rev.reverse_inner_order = true;
        CHECK(solve_type_dp(inst, fwd).cost == solve_type_dp(inst, rev).cost);
    }
}

TEST_CASE("degenerate shapes") {
    const Instance empty = factor_instance(2, {}, {3, 4});
    CHECK(solve_type_dp(empty).cost == 0);

    const Instance solo = factor_instance(1, {7, 1}, {2});
    const SolveResult r = solve_type_dp(solo);
    CHECK(r.cost == 16);
    CHECK(r.allocation.owner == std::vector<int>{0, 0});
}

TEST_CASE("general costs are rejected") {
    Instance inst;
    inst.n = 2;
    inst.values = {1, 1};
    inst.cost_model = GeneralCosts{{{0, 0}, {0, 0}}};
    CHECK_THROWS_AS(solve_type_dp(inst), PreconditionError);
}

TEST_CASE("budget caps the configuration space") {
    // Eight distinct values: 2^8 bundle configurations exceed a budget of 10.
    const Instance inst = factor_instance(2, {1, 2, 3, 4, 5, 6, 7, 8}, {0, 1});
    TypeDpOptions opts;
    opts.budget = 10;
    CHECK_THROWS_AS(solve_type_dp(inst, opts), BudgetError);
}

TEST_CASE("many items of few types stay cheap") {
    // 40 items over two types; the configuration space is (21)*(21), far
    // below the brute-force 2^40.
    std::vector<Value> values;
    for (int i = 0; i < 20; ++i) values.push_back(3);
    for (int i = 0; i < 20; ++i) values.push_back(7);
    const Instance inst = factor_instance(2, values, {1, 4});
    const SolveResult r = solve_type_dp(inst);
    CHECK(is_efx(inst, r.allocation));
    CHECK(allocation_cost(inst, r.allocation) == r.cost);
    // Splitting value 200 evenly with the cheap agent favored: cost >= 100.
    CHECK(r.cost >= 100);
}
