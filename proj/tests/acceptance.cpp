// End-to-end acceptance run: eight deliverable checks, one pass/fail line
// each, exit code = number of failures. Tolerances (instance counts and wall
// clock limits) are pinned inline next to each check.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "efx/bench.hpp"
#include "efx/brute.hpp"
#include "efx/dp.hpp"
#include "efx/fairness.hpp"
#include "efx/generators.hpp"
#include "efx/types_dp.hpp"

using namespace efx;

namespace {

using steady = std::chrono::steady_clock;

double secs(steady::time_point t0) {
    return std::chrono::duration<double>(steady::now() - t0).count();
}

int failures = 0;

void report(int idx, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", idx, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <typename Fn>
void guarded(int idx, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        report(idx, false, std::string("exception: ") + e.what());
    }
}

Instance relief_instance() {
    Instance inst;
    inst.n = 4;
    inst.values.assign(8, 15);
    inst.values.insert(inst.values.end(), 3, 10);
    inst.cost_model = FactorCosts{{0, 1, 1, 2}};
    return inst;
}

std::string suite_digest(const SuiteReport& r) {
    return r.suite + " " + std::to_string(r.agreements) + "/" + std::to_string(r.instances);
}

}  // namespace

int main() {
    constexpr std::uint64_t kSeed = 1;

    // 1. Value-vector solver vs. exhaustive search: the complete two-agent
    //    grid (m <= 4, values <= 3, costs <= 3; 17043521 instances) plus 500
    //    seeded random instances with n in {2,3}, within 60 seconds.
    guarded(1, [] {
        const auto t0 = steady::now();
        const SuiteReport grid = run_bench_suite("dp-grid", kSeed);
        const SuiteReport rnd = run_bench_suite("dp-random", kSeed);
        const double t = secs(t0);
        const bool ok = grid.all_agree() && grid.instances == 17043521 && rnd.all_agree() &&
                        rnd.instances == 500 && t < 60.0;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s, %s, %.1fs (limit 60s)",
                      suite_digest(grid).c_str(), suite_digest(rnd).c_str(), t);
        report(1, ok, buf);
    });

    // 2. Type solver vs. search on 300 seeded factor instances (n <= 4,
    //    m <= 8, values <= 9, factors <= 4, at most 3 distinct values),
    //    within 60 seconds.
    guarded(2, [] {
        const auto t0 = steady::now();
        const SuiteReport r = run_bench_suite("types", kSeed);
        const double t = secs(t0);
        const bool ok = r.all_agree() && r.instances >= 300 && t < 60.0;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s, %.1fs (limit 60s)", suite_digest(r).c_str(), t);
        report(2, ok, buf);
    });

    // 3. Assignment solver vs. search on 200 seeded positive-value instances
    //    with n >= m, plus the fact that every EFx allocation there is
    //    singleton.
    guarded(3, [] {
        const SuiteReport r = run_bench_suite("matching", kSeed);
        report(3, r.all_agree() && r.instances >= 200, suite_digest(r));
    });

    // 4. Agent kernelization on 200 seeded wide instances (n in 10..40,
    //    m in {2,3}): optimum preserved, retained set within the m^2 +
    //    m*C(m,2) bound, reduced optima lift to EFx optima.
    guarded(4, [] {
        const SuiteReport r = run_bench_suite("kernel", kSeed);
        report(4, r.all_agree() && r.instances >= 200, suite_digest(r));
    });

    // 5. Reduction thresholds vs. independent enumerators, 50 instances per
    //    family (partition, bin packing, general-cost gadget, factor gadget).
    guarded(5, [] {
        const SuiteReport r = run_bench_suite("thresholds", kSeed);
        report(5, r.all_agree() && r.instances >= 200, suite_digest(r));
    });

    // 6. Structural invariants over the complete EFx sets for n <= 3,
    //    m <= 5, values <= 4: bundle gap bounded by the largest item value,
    //    every bundle at or above the value floor.
    guarded(6, [] {
        const SuiteReport r = run_bench_suite("structural", kSeed);
        report(6, r.all_agree() && r.instances == 11718, suite_digest(r));
    });

    // 7. Worked disaster-relief example (4 crews, eight 15s and three 10s,
    //    factors 0/1/1/2): every solver prices it at 135 within 5 seconds.
    guarded(7, [] {
        const Instance inst = relief_instance();
        bool ok = true;
        std::string detail;
        const auto run_one = [&](const char* name, Cost cost, double t) {
            ok = ok && cost == 135 && t < 5.0;
            char buf[64];
            std::snprintf(buf, sizeof buf, "%s%s=%lld (%.2fs)", detail.empty() ? "" : ", ",
                          name, static_cast<long long>(cost), t);
            detail += buf;
        };
        auto t0 = steady::now();
        run_one("search", solve_brute(inst).cost, secs(t0));
        t0 = steady::now();
        run_one("dp", solve_value_vector_dp(inst).cost, secs(t0));
        t0 = steady::now();
        run_one("types", solve_type_dp(inst).cost, secs(t0));
        report(7, ok, detail + ", want 135 each (limit 5s each)");
    });

    // 8. Desk-scale latency: the value-vector solver on a 20-item two-agent
    //    instance with total value 200 in under a second, and the type solver
    //    on 60 items of two values across 10 agents in under ten seconds.
    guarded(8, [] {
        std::mt19937_64 rng(20260814);

        Instance two;
        two.n = 2;
        two.values.assign(20, 10);
        GeneralCosts gc;
        gc.agent_costs.assign(2, std::vector<Cost>(20, 0));
        for (auto& row : gc.agent_costs)
            for (Cost& c : row) c = uniform_upto(rng, 9);
        two.cost_model = std::move(gc);
        auto t0 = steady::now();
        const SolveResult dp = solve_value_vector_dp(two);
        const double dp_t = secs(t0);
        const bool dp_ok = dp_t < 1.0 && is_efx(two, dp.allocation);

        Instance wide;
        wide.n = 10;
        wide.values.assign(30, 3);
        wide.values.insert(wide.values.end(), 30, 7);
        FactorCosts fc;
        fc.alphas.resize(10);
        for (Cost& a : fc.alphas) a = uniform_upto(rng, 9);
        wide.cost_model = std::move(fc);
        t0 = steady::now();
        const SolveResult ty = solve_type_dp(wide);
        const double ty_t = secs(t0);
        const bool ty_ok = ty_t < 10.0 && is_efx(wide, ty.allocation);

        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "dp m=20 %.3fs (limit 1s), types m=60 %.3fs (limit 10s)", dp_t, ty_t);
        report(8, dp_ok && ty_ok, buf);
    });

    if (failures == 0)
        std::printf("all acceptance checks passed\n");
    else
        std::printf("%d acceptance check(s) failed\n", failures);
    return failures;
}
