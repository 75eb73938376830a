#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "efx/cli.hpp"
#include "efx/io.hpp"

using namespace efx;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliRun r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string tmp_path(const std::string& name) {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() / "efx_cli_tests";
        std::filesystem::create_directories(d);
        return d;
    }();
    return (dir / name).string();
}

std::string stage(const std::string& name, const std::string& content) {
    const std::string path = tmp_path(name);
    write_file(path, content);
    return path;
}

Instance small_factor_instance() {
    Instance inst;
    inst.n = 2;
    inst.values = {3, 3, 2};
    inst.cost_model = FactorCosts{{0, 1}};
    return inst;
}

Instance relief_instance() {
    Instance inst;
    inst.n = 4;
    inst.values = {15, 15, 15, 15, 15, 15, 15, 15, 10, 10, 10};
    inst.cost_model = FactorCosts{{0, 1, 1, 2}};
    return inst;
}

}  // namespace

TEST_CASE("solve picks the requested algorithm and agrees across them") {
    const std::string in = stage("solve_small.json", serialize_instance(small_factor_instance()));
    for (const std::string algo : {"brute", "dp", "types", "auto"}) {
        CAPTURE(algo);
        const CliRun r = run({"solve", "--in", in, "--algo", algo});
        REQUIRE(r.code == 0);
        const SolveResult res = parse_result(r.out);
        CHECK(res.cost == 3);
        CHECK(res.allocation.owner == std::vector<int>{0, 1, 0});
        if (algo != "auto") CHECK(res.algorithm == algo);
    }
    // auto prefers the type solver here: a factor model with two item values.
    const CliRun r = run({"solve", "--in", in});
    REQUIRE(r.code == 0);
    CHECK(parse_result(r.out).algorithm == "types");
}

TEST_CASE("solve routes one-item-per-agent instances to the assignment solver") {
    Instance inst;
    inst.n = 3;
    inst.values = {5, 7};
    inst.cost_model = GeneralCosts{{{1, 9}, {2, 2}, {5, 1}}};
    const std::string in = stage("solve_singleton.json", serialize_instance(inst));
    const CliRun r = run({"solve", "--in", in});
    REQUIRE(r.code == 0);
    const SolveResult res = parse_result(r.out);
    CHECK(res.algorithm == "matching");
    CHECK(res.cost == 2);
    CHECK(res.allocation.owner == std::vector<int>{0, 2});
}

TEST_CASE("solve --out writes the result file and keeps stdout quiet") {
    const std::string in = stage("solve_out.json", serialize_instance(small_factor_instance()));
    const std::string out_path = tmp_path("solve_result.json");
    const CliRun r = run({"solve", "--in", in, "--algo", "dp", "--out", out_path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const SolveResult res = parse_result(read_file(out_path));
    CHECK(res.cost == 3);
    CHECK(res.algorithm == "dp");
}

TEST_CASE("check accepts an EFx allocation and prices it") {
    const std::string in = stage("check_relief.json", serialize_instance(relief_instance()));
    const std::string alloc =
        stage("check_relief_alloc.json",
              serialize_allocation(Allocation{{0, 0, 1, 1, 2, 2, 3, 3, 0, 1, 2}}));
    const CliRun r = run({"check", "--instance", in, "--allocation", alloc});
    CHECK(r.code == 0);
    CHECK(r.out == "{\"efx\":true,\"cost\":140}\n");
}

TEST_CASE("check reports the lexicographically first violation witness") {
    Instance inst;
    inst.n = 2;
    inst.values = {4, 5, 0};
    inst.cost_model = FactorCosts{{0, 1}};
    const std::string in = stage("check_bad.json", serialize_instance(inst));
    const std::string alloc = stage("check_bad_alloc.json",
                                    serialize_allocation(Allocation{{0, 1, 1}}));
    const CliRun r = run({"check", "--instance", in, "--allocation", alloc});
    CHECK(r.code == 3);
    CHECK(r.out ==
          "{\"efx\":false,\"cost\":5,"
          "\"witness\":{\"envier\":0,\"envied\":1,\"removed_item\":2}}\n");
}

TEST_CASE("kernelize writes the reduced instance and the retained agents") {
    Instance inst;
    inst.n = 20;
    inst.values = {7};
    FactorCosts costs;
    for (int a = 0; a < 20; ++a) costs.alphas.push_back(19 - a);
    inst.cost_model = std::move(costs);
    const std::string in = stage("kern_in.json", serialize_instance(inst));
    const std::string out_path = tmp_path("kern_out.json");
    const CliRun r = run({"kernelize", "--in", in, "--out", out_path});
    REQUIRE(r.code == 0);
    CHECK(r.out == "{\"retained\":[19]}\n");
    const Instance reduced = parse_instance(read_file(out_path));
    CHECK(reduced.n == 1);
    CHECK(reduced.values == std::vector<Value>{7});
    CHECK(std::get<FactorCosts>(reduced.cost_model).alphas == std::vector<Cost>{0});
}

TEST_CASE("generate reduction families emit the instance plus a contract sidecar") {
    const std::string out_path = tmp_path("gen_out.json");

    CliRun r = run({"generate", "partition", "--set", "1,2,3,4", "--out", out_path});
    REQUIRE(r.code == 0);
    nlohmann::json sidecar = nlohmann::json::parse(r.out);
    CHECK(sidecar.at("threshold").get<std::uint64_t>() == 5);
    CHECK_FALSE(sidecar.at("contract").get<std::string>().empty());
    CHECK(parse_instance(read_file(out_path)).values ==
          std::vector<Value>{1, 2, 3, 4, 0});

    r = run({"generate", "factor-hardness", "--set", "2,2", "--out", out_path});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("threshold").get<std::uint64_t>() == 17);
    CHECK(parse_instance(read_file(out_path)).values == std::vector<Value>{17, 17, 3});

    r = run({"generate", "binpacking", "--sizes", "3,3", "--capacity", "3", "--bins", "2",
             "--out", out_path});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("threshold").get<std::uint64_t>() == 6);
    const Instance packed = parse_instance(read_file(out_path));
    CHECK(packed.n == 3);
    CHECK(packed.values == std::vector<Value>{3, 3, 3, 3});

    r = run({"generate", "gadget-general", "--set", "1,2,1,2", "--rho", "5", "--out", out_path});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("threshold").get<std::uint64_t>() == 1);
    CHECK(parse_instance(read_file(out_path)).values ==
          std::vector<Value>{1, 2, 1, 2, 0, 0, 3});

    r = run({"generate", "gadget-factor", "--set", "2,2", "--out", out_path});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("threshold").get<std::uint64_t>() == 4);
    CHECK(parse_instance(read_file(out_path)).values == std::vector<Value>{2, 2, 2, 2});
}

TEST_CASE("generate shift prints the shifted multiset") {
    const CliRun r = run({"generate", "shift", "--set", "1,3"});
    CHECK(r.code == 0);
    CHECK(r.out == "{\"shifted\":[5,7]}\n");
}

TEST_CASE("generate random is reproducible and honors --out") {
    const std::vector<std::string> args = {"generate", "random",       "--n",    "2",
                                           "--m",      "4",            "--vmax", "5",
                                           "--cost-model", "factor",   "--cmax", "3",
                                           "--seed",   "9"};
    const CliRun a = run(args);
    const CliRun b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const Instance inst = parse_instance(a.out);
    CHECK(inst.n == 2);
    CHECK(inst.values.size() == 4);

    const std::string out_path = tmp_path("gen_random.json");
    auto with_out = args;
    with_out.push_back("--out");
    with_out.push_back(out_path);
    const CliRun c = run(with_out);
    REQUIRE(c.code == 0);
    CHECK(c.out.empty());
    CHECK(serialize_instance(parse_instance(read_file(out_path))) == serialize_instance(inst));
}

TEST_CASE("bench subcommand reports a suite table") {
    const CliRun r = run({"bench", "--suite", "matching", "--seed", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("suite") != std::string::npos);
    CHECK(r.out.find("matching") != std::string::npos);
    CHECK(r.err.empty());
}

TEST_CASE("exit codes distinguish failure classes") {
    // 2: missing file and malformed JSON
    CliRun r = run({"solve", "--in", tmp_path("does_not_exist.json")});
    CHECK(r.code == 2);
    CHECK(r.err.rfind("error:", 0) == 0);
    r = run({"solve", "--in", stage("malformed.json", "{ not json")});
    CHECK(r.code == 2);

    // 4: budget exhausted
    Instance inst;
    inst.n = 2;
    inst.values = {1, 2, 4, 8};
    inst.cost_model = FactorCosts{{0, 1}};
    const std::string in = stage("budget.json", serialize_instance(inst));
    r = run({"solve", "--in", in, "--algo", "dp", "--budget", "1"});
    CHECK(r.code == 4);

    // 1: solver precondition violated (two agents cannot take one item each
    // of four), unknown flags, unknown subcommands, empty command line
    r = run({"solve", "--in", in, "--algo", "matching"});
    CHECK(r.code == 1);
    CHECK(run({"solve", "--in", in, "--bogus"}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"bench", "--suite", "no-such-suite"}).code == 1);

    // 0: help
    const CliRun help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("solve") != std::string::npos);
}
