#include "efx/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "efx/bench.hpp"
#include "efx/brute.hpp"
#include "efx/dp.hpp"
#include "efx/fairness.hpp"
#include "efx/generators.hpp"
#include "efx/io.hpp"
#include "efx/kernel.hpp"
#include "efx/matching.hpp"
#include "efx/types_dp.hpp"

namespace efx {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t pow_saturating(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

int env_threads() {
    if (const char* s = std::getenv("EFX_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(s, &end, 10);
        if (end != s && *end == '\0' && v >= 1 && v <= 4096) return static_cast<int>(v);
    }
    return 1;
}

std::vector<Value> parse_csv_values(const std::string& text, const char* flag) {
    std::vector<Value> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string tok = text.substr(pos, comma - pos);
        const auto first = tok.find_first_not_of(" \t");
        if (first == std::string::npos) {
            if (!(pos == 0 && comma == text.size()))  // lone empty string = empty list
                throw PreconditionError(std::string(flag) +
                                        " expects comma-separated non-negative integers");
        } else {
            tok = tok.substr(first, tok.find_last_not_of(" \t") - first + 1);
            Value v = 0;
            for (char c : tok) {
                if (c < '0' || c > '9')
                    throw PreconditionError(std::string(flag) +
                                            " expects comma-separated non-negative integers");
                if (__builtin_mul_overflow(v, Value{10}, &v) ||
                    __builtin_add_overflow(v, static_cast<Value>(c - '0'), &v))
                    throw PreconditionError(std::string(flag) + ": value does not fit in 64 bits");
            }
            out.push_back(v);
        }
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return out;
}

struct SolveArgs {
    std::string in;
    std::string algo = "auto";
    std::string out_path;
    int threads = 0;  // 0 = env default
    std::uint64_t budget = 0;
    bool has_budget = false;
};

SolveResult dispatch_solve(const Instance& inst, const SolveArgs& a) {
    const int threads = a.threads > 0 ? a.threads : env_threads();
    if (a.algo == "brute") {
        BruteOptions o;
        o.threads = threads;
        if (a.has_budget) o.budget = a.budget;
        return solve_brute(inst, o);
    }
    if (a.algo == "dp") {
        DpOptions o;
        if (a.has_budget) o.budget = a.budget;
        return solve_value_vector_dp(inst, o);
    }
    if (a.algo == "types") {
        TypeDpOptions o;
        if (a.has_budget) o.budget = a.budget;
        return solve_type_dp(inst, o);
    }
    if (a.algo == "matching") return solve_singleton_matching(inst);

    // auto: cheapest structure first, then table solvers within budget
    const int m = inst.item_count();
    bool positive = true;
    for (Value v : inst.values)
        if (v == 0) positive = false;
    if (inst.n >= m && positive) return solve_singleton_matching(inst);
    if (inst.is_factor() && type_profile(inst).beta() <= 4) {
        TypeDpOptions o;
        if (a.has_budget) o.budget = a.budget;
        return solve_type_dp(inst, o);
    }
    const std::uint64_t dp_budget = a.has_budget ? a.budget : 10'000'000;
    if (pow_saturating(total_value(inst) + 1, inst.n, dp_budget) <= dp_budget) {
        DpOptions o;
        o.budget = dp_budget;
        return solve_value_vector_dp(inst, o);
    }
    const std::uint64_t brute_budget = a.has_budget ? a.budget : 100'000'000;
    if (pow_saturating(inst.n, m, brute_budget) <= brute_budget) {
        BruteOptions o;
        o.threads = threads;
        o.budget = brute_budget;
        return solve_brute(inst, o);
    }
    throw BudgetError("instance out of desk scale for the exact solvers");
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty())
        out << text << "\n";
    else
        write_file(out_path, text + "\n");
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
    const Instance inst = parse_instance(read_file(a.in));
    const SolveResult result = dispatch_solve(inst, a);
    emit(serialize_result(result), a.out_path, out);
    return 0;
}

int cmd_check(const std::string& instance_path, const std::string& allocation_path,
              std::ostream& out) {
    const Instance inst = parse_instance(read_file(instance_path));
    const Allocation alloc = parse_allocation(read_file(allocation_path));
    const Cost cost = allocation_cost(inst, alloc);
    const auto witness = check_efx(inst, alloc);
    ordered_json doc;
    doc["efx"] = !witness.has_value();
    doc["cost"] = cost;
    if (witness) {
        doc["witness"] = ordered_json{{"envier", witness->envier},
                                      {"envied", witness->envied},
                                      {"removed_item", witness->removed_item}};
    }
    out << doc.dump() << "\n";
    return witness ? 3 : 0;
}

int cmd_kernelize(const std::string& in_path, const std::string& out_path, std::ostream& out) {
    const Instance inst = parse_instance(read_file(in_path));
    const KernelMap kmap = kernelize(inst);
    write_file(out_path, serialize_instance(kmap.reduced) + "\n");
    ordered_json sidecar;
    sidecar["retained"] = kmap.retained;
    out << sidecar.dump() << "\n";
    return 0;
}

// Reduction families write the instance to --out and print the contract
// sidecar; `random` has no sidecar and prints the instance when --out is
// omitted.
int emit_generated(const GeneratedInstance& g, const std::string& out_path, std::ostream& out) {
    write_file(out_path, serialize_instance(g.instance) + "\n");
    ordered_json sidecar;
    sidecar["threshold"] = g.threshold;
    sidecar["contract"] = g.contract;
    out << sidecar.dump() << "\n";
    return 0;
}

int cmd_bench(const std::string& suite, std::uint64_t seed, std::ostream& out,
              std::ostream& err) {
    std::vector<std::string> names;
    if (suite == "all")
        names = bench_suite_names();
    else
        names.push_back(suite);
    out << std::left << std::setw(12) << "suite" << std::right << std::setw(10) << "instances"
        << std::setw(12) << "agreements" << std::setw(12) << "mismatches" << std::setw(10)
        << "wall_ms" << "\n";
    bool ok = true;
    for (const std::string& name : names) {
        const SuiteReport rep = run_bench_suite(name, seed);
        out << std::left << std::setw(12) << rep.suite << std::right << std::setw(10)
            << rep.instances << std::setw(12) << rep.agreements << std::setw(12)
            << rep.mismatches << std::setw(10) << rep.wall_ms << "\n";
        if (!rep.all_agree()) {
            ok = false;
            err << "suite " << rep.suite << " first mismatch: " << rep.first_mismatch << "\n";
        }
    }
    return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"minimum-cost EFx allocation toolkit"};
    app.require_subcommand(1);

    SolveArgs sa;
    CLI::App* solve = app.add_subcommand("solve", "solve an instance file");
    solve->add_option("--in", sa.in, "instance JSON file")->required();
    solve->add_option("--algo", sa.algo, "algorithm")
        ->check(CLI::IsMember({"auto", "brute", "dp", "types", "matching"}));
    solve->add_option("--out", sa.out_path, "write the result JSON here instead of stdout");
    solve->add_option("--threads", sa.threads, "worker threads (default: EFX_THREADS or 1)");
    CLI::Option* budget_opt =
        solve->add_option("--budget", sa.budget, "state/assignment budget override");

    std::string check_instance, check_allocation;
    CLI::App* check = app.add_subcommand("check", "verify an allocation is EFx");
    check->add_option("--instance", check_instance, "instance JSON file")->required();
    check->add_option("--allocation", check_allocation, "allocation JSON file")->required();

    std::string kern_in, kern_out;
    CLI::App* kern = app.add_subcommand("kernelize", "reduce the agent set");
    kern->add_option("--in", kern_in, "instance JSON file")->required();
    kern->add_option("--out", kern_out, "write the reduced instance here")->required();

    CLI::App* gen = app.add_subcommand("generate", "build instances from reductions");
    gen->require_subcommand(1);
    std::string g_set, g_out;
    std::uint64_t g_rho = 2;
    std::vector<Value> g_sizes_parsed;
    std::string g_sizes;
    std::uint64_t g_capacity = 0;
    int g_bins = 0;
    CLI::App* g_partition = gen->add_subcommand("partition", "equal-sum partition reduction");
    g_partition->add_option("--set", g_set, "comma-separated multiset")->required();
    g_partition->add_option("--out", g_out, "instance file")->required();
    CLI::App* g_factor = gen->add_subcommand("factor-hardness", "factor-model hardness reduction");
    g_factor->add_option("--set", g_set, "comma-separated multiset")->required();
    g_factor->add_option("--out", g_out, "instance file")->required();
    CLI::App* g_binpack = gen->add_subcommand("binpacking", "bin packing reduction");
    g_binpack->add_option("--sizes", g_sizes, "comma-separated piece sizes")->required();
    g_binpack->add_option("--capacity", g_capacity, "bin capacity")->required();
    g_binpack->add_option("--bins", g_bins, "bin count")->required();
    g_binpack->add_option("--out", g_out, "instance file")->required();
    CLI::App* g_shift = gen->add_subcommand("shift", "equal-cardinality value shift");
    g_shift->add_option("--set", g_set, "comma-separated multiset")->required();
    CLI::App* g_gadget_g = gen->add_subcommand("gadget-general", "inapproximability gadget");
    g_gadget_g->add_option("--set", g_set, "comma-separated multiset")->required();
    g_gadget_g->add_option("--rho", g_rho, "separation factor (>= 2)");
    g_gadget_g->add_option("--out", g_out, "instance file")->required();
    CLI::App* g_gadget_f = gen->add_subcommand("gadget-factor", "factor-model gadget");
    g_gadget_f->add_option("--set", g_set, "comma-separated multiset")->required();
    g_gadget_f->add_option("--out", g_out, "instance file")->required();
    CLI::App* g_random = gen->add_subcommand("random", "seeded random instance");
    int r_n = 0, r_m = 0, r_beta_cap = 0;
    std::uint64_t r_vmax = 0, r_cmax = 0, r_seed = 1;
    std::string r_cost_model = "general";
    g_random->add_option("--n", r_n, "agents")->required();
    g_random->add_option("--m", r_m, "items")->required();
    g_random->add_option("--vmax", r_vmax, "max item value")->required();
    g_random->add_option("--cost-model", r_cost_model, "cost model")
        ->check(CLI::IsMember({"general", "factor"}));
    g_random->add_option("--cmax", r_cmax, "max cost entry")->required();
    g_random->add_option("--beta-cap", r_beta_cap, "draw values from a palette of this size");
    g_random->add_option("--seed", r_seed, "RNG seed");
    g_random->add_option("--out", g_out, "instance file (default: stdout)");

    std::string bench_suite;
    std::uint64_t bench_seed = 1;
    CLI::App* bench = app.add_subcommand("bench", "run a differential suite");
    std::vector<std::string> suite_choices = bench_suite_names();
    suite_choices.push_back("all");
    bench->add_option("--suite", bench_suite, "suite name or 'all'")
        ->required()
        ->check(CLI::IsMember(suite_choices));
    bench->add_option("--seed", bench_seed, "suite seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    try {
        if (*solve) {
            sa.has_budget = budget_opt->count() > 0;
            return cmd_solve(sa, out);
        }
        if (*check) return cmd_check(check_instance, check_allocation, out);
        if (*kern) return cmd_kernelize(kern_in, kern_out, out);
        if (*gen) {
            if (*g_shift) {
                ordered_json doc;
                doc["shifted"] = gen_shift_equal_cardinality(parse_csv_values(g_set, "--set"));
                out << doc.dump() << "\n";
                return 0;
            }
            if (*g_random) {
                const RandomCostKind kind = r_cost_model == "factor" ? RandomCostKind::factor
                                                                     : RandomCostKind::general;
                const Instance inst =
                    gen_random(r_n, r_m, r_vmax, kind, r_cmax, r_beta_cap, r_seed);
                emit(serialize_instance(inst), g_out, out);
                return 0;
            }
            GeneratedInstance g;
            if (*g_partition) g = gen_from_partition(parse_csv_values(g_set, "--set"));
            else if (*g_factor) g = gen_factor_hardness(parse_csv_values(g_set, "--set"));
            else if (*g_binpack)
                g = gen_from_bin_packing(parse_csv_values(g_sizes, "--sizes"), g_capacity,
                                         g_bins);
            else if (*g_gadget_g)
                g = gen_gadget_general(parse_csv_values(g_set, "--set"), g_rho);
            else
                g = gen_gadget_factor(parse_csv_values(g_set, "--set"));
            return emit_generated(g, g_out, out);
        }
        if (*bench) return cmd_bench(bench_suite, bench_seed, out, err);
        err << "error: no subcommand selected\n";
        return 1;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const InternalError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace efx
