#include "efx/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace efx {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void malformed(const std::string& where, const std::string& msg) {
    throw ParseError(ParseErrorKind::malformed, where, msg);
}

json parse_document(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) malformed("document", "not valid JSON");
    return doc;
}

void expect_keys(const json& obj, const std::string& where,
                 std::initializer_list<const char*> keys) {
    if (!obj.is_object()) malformed(where, "expected a JSON object");
    for (const char* k : keys)
        if (!obj.contains(k)) malformed(where + "." + k, "missing field");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys) known = known || it.key() == k;
        if (!known) malformed(where + "." + it.key(), "unknown field");
    }
}

std::uint64_t get_u64(const json& v, const std::string& where) {
    if (v.is_number_integer() && !v.is_number_unsigned())
        throw ParseError(ParseErrorKind::negative_number, where, "negative number");
    if (!v.is_number_unsigned()) malformed(where, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

std::vector<std::uint64_t> get_u64_array(const json& v, const std::string& where) {
    if (!v.is_array()) malformed(where, "expected an array");
    std::vector<std::uint64_t> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(get_u64(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

int get_agent_count(const json& v, const std::string& where) {
    std::uint64_t n = get_u64(v, where);
    if (n < 1 || n > 1'000'000)
        throw ParseError(ParseErrorKind::dimension_mismatch, where,
                         "agent count out of supported range");
    return static_cast<int>(n);
}

}  // namespace

Instance parse_instance(const std::string& text) {
    json doc = parse_document(text);
    expect_keys(doc, "instance", {"n", "values", "cost_model"});
    Instance inst;
    inst.n = get_agent_count(doc["n"], "n");
    inst.values = get_u64_array(doc["values"], "values");

    const json& cm = doc["cost_model"];
    if (!cm.is_object() || !cm.contains("type") || !cm["type"].is_string())
        malformed("cost_model.type", "expected \"general\" or \"factor\"");
    const std::string type = cm["type"].get<std::string>();
    if (type == "general") {
        expect_keys(cm, "cost_model", {"type", "costs"});
        const json& rows = cm["costs"];
        if (!rows.is_array()) malformed("cost_model.costs", "expected an array of rows");
        GeneralCosts g;
        g.agent_costs.reserve(rows.size());
        for (std::size_t a = 0; a < rows.size(); ++a)
            g.agent_costs.push_back(
                get_u64_array(rows[a], "cost_model.costs[" + std::to_string(a) + "]"));
        inst.cost_model = std::move(g);
    } else if (type == "factor") {
        expect_keys(cm, "cost_model", {"type", "alphas"});
        inst.cost_model = FactorCosts{get_u64_array(cm["alphas"], "cost_model.alphas")};
    } else {
        malformed("cost_model.type", "expected \"general\" or \"factor\"");
    }

    validate_instance(inst);
    return inst;
}

Allocation parse_allocation(const std::string& text) {
    json doc = parse_document(text);
    expect_keys(doc, "allocation", {"owner"});
    Allocation alloc;
    for (std::uint64_t o : get_u64_array(doc["owner"], "owner")) {
        if (o > 1'000'000)
            throw ParseError(ParseErrorKind::dimension_mismatch, "owner",
                             "agent index out of supported range");
        alloc.owner.push_back(static_cast<int>(o));
    }
    return alloc;
}

SolveResult parse_result(const std::string& text) {
    json doc = parse_document(text);
    expect_keys(doc, "result", {"cost", "owner", "algorithm", "stats"});
    SolveResult r;
    r.cost = get_u64(doc["cost"], "cost");
    for (std::uint64_t o : get_u64_array(doc["owner"], "owner"))
        r.allocation.owner.push_back(static_cast<int>(o));
    if (!doc["algorithm"].is_string()) malformed("algorithm", "expected a string");
    r.algorithm = doc["algorithm"].get<std::string>();
    if (!doc["stats"].is_object()) malformed("stats", "expected an object");
    for (auto it = doc["stats"].begin(); it != doc["stats"].end(); ++it)
        r.stats[it.key()] = get_u64(it.value(), "stats." + it.key());
    return r;
}

std::string serialize_instance(const Instance& inst) {
    ordered_json doc;
    doc["n"] = inst.n;
    doc["values"] = inst.values;
    ordered_json cm;
    if (const auto* g = std::get_if<GeneralCosts>(&inst.cost_model)) {
        cm["type"] = "general";
        cm["costs"] = g->agent_costs;
    } else {
        cm["type"] = "factor";
        cm["alphas"] = std::get<FactorCosts>(inst.cost_model).alphas;
    }
    doc["cost_model"] = std::move(cm);
    return doc.dump();
}

std::string serialize_allocation(const Allocation& alloc) {
    ordered_json doc;
    doc["owner"] = alloc.owner;
    return doc.dump();
}

std::string serialize_result(const SolveResult& result) {
    ordered_json doc;
    doc["cost"] = result.cost;
    doc["owner"] = result.allocation.owner;
    doc["algorithm"] = result.algorithm;
    doc["stats"] = ordered_json::object();
    for (const auto& [k, v] : result.stats) doc["stats"][k] = v;  // map order = sorted keys
    return doc.dump();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error("read failure: " + path);
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open file for writing: " + path);
    out << text;
    out.flush();
    if (!out) throw Error("write failure: " + path);
}

}  // namespace efx
