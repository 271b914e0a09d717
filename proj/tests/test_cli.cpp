#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "blockpart/cli.hpp"
#include "blockpart/gfp.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

using namespace blockpart;
using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string line;
    while (std::getline(is, line)) out.push_back(line);
    return out;
}

json load_schema(const std::string& name) {
    std::ifstream f(std::string(SCHEMA_DIR) + "/" + name);
    REQUIRE(f.good());
    return json::parse(f);
}

// Minimal structural validator covering the subset of JSON Schema the
// shipped schemas use: type, required, properties, items,
// additionalProperties: false.
bool conforms(const json& schema, const json& val) {
    if (schema.contains("type")) {
        std::string t = schema["type"];
        if (t == "object" && !val.is_object()) return false;
        if (t == "array" && !val.is_array()) return false;
        if (t == "string" && !val.is_string()) return false;
        if (t == "integer" && !val.is_number_integer()) return false;
        if (t == "number" && !val.is_number()) return false;
        if (t == "boolean" && !val.is_boolean()) return false;
    }
    if (schema.contains("required"))
        for (const auto& key : schema["required"])
            if (!val.contains(key.get<std::string>())) return false;
    if (schema.contains("properties")) {
        for (const auto& [key, sub] : schema["properties"].items())
            if (val.contains(key) && !conforms(sub, val[key])) return false;
        if (schema.value("additionalProperties", json(true)) == json(false))
            for (const auto& [key, sub] : val.items())
                if (!schema["properties"].contains(key)) return false;
    }
    if (schema.contains("items") && val.is_array())
        for (const auto& item : val)
            if (!conforms(schema["items"], item)) return false;
    return true;
}

}  // namespace

TEST_CASE("verify emits a schema-conforming report and exit code 0") {
    RunResult r = run({"verify", "main", "--order", "6", "--zwindow", "4", "--json"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(conforms(load_schema("identity_report.schema.json"), j));
    CHECK(j["equal"] == true);
    CHECK(j["order"] == 6);
    // plain mode
    r = run({"verify", "jacobi", "--order", "6", "--zwindow", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("equal") != std::string::npos);
}

TEST_CASE("verify covers the compound identity ids") {
    CHECK(run({"verify", "k-exclusion:2", "--order", "5", "--zwindow", "4"}).code == 0);
    CHECK(run({"verify", "offset-law:2:3", "--order", "6"}).code == 0);
    CHECK(run({"verify", "products", "--order", "6"}).code == 0);
    CHECK(run({"verify", "two-exclusion", "--order", "5", "--zwindow", "4"}).code == 0);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run({"verify", "no-such-identity"}).code == 2);
    CHECK(run({"verify"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"sequence", "s_even", "--bogus-flag"}).code == 2);
    RunResult help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("verify") != std::string::npos);
}

TEST_CASE("sequence emits the two-variable state-sum table") {
    RunResult r = run({"sequence", "s_even", "--order", "4"});
    REQUIRE(r.code == 0);
    std::vector<std::string> expect = {"0,0,1", "1,2,1", "2,0,1", "2,2,2",
                                       "3,2,5", "4,0,2", "4,2,6", "4,4,1"};
    CHECK(lines_of(r.out) == expect);
    r = run({"sequence", "s_odd", "--order", "3"});
    REQUIRE(r.code == 0);
    expect = {"0,0,1", "1,0,2", "2,0,2", "2,2,1", "3,0,4", "3,2,2"};
    CHECK(lines_of(r.out) == expect);
}

TEST_CASE("sequence specialises t^2 to the printed coefficient lists") {
    RunResult r = run({"sequence", "s_even", "--order", "8", "--tsq", "4"});
    REQUIRE(r.code == 0);
    std::vector<std::string> expect = {"0,1",  "1,4",   "2,9",   "3,20",  "4,42",
                                       "5,80", "6,147", "7,260", "8,445"};
    CHECK(lines_of(r.out) == expect);
    r = run({"sequence", "s_even", "--order", "8", "--tsq", "1"});
    REQUIRE(r.code == 0);
    expect = {"0,1", "1,1", "2,3", "3,5", "4,9", "5,14", "6,24", "7,35", "8,55"};
    CHECK(lines_of(r.out) == expect);
}

TEST_CASE("sequence handles exclusion classes and JSON output") {
    RunResult r = run({"sequence", "s_k:1:0", "--order", "6"});
    REQUIRE(r.code == 0);
    std::vector<std::string> expect = {"0,1", "1,1", "2,2", "3,3", "4,5", "5,7", "6,11"};
    CHECK(lines_of(r.out) == expect);
    r = run({"sequence", "s_even", "--order", "3", "--json"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(conforms(load_schema("series.schema.json"), j));
    CHECK(j["stabilized"] == true);
}

TEST_CASE("expand mirrors the array-enumeration series") {
    RunResult r = run({"expand", "gfp", "--order", "5", "--offset", "-1", "--csv"});
    REQUIRE(r.code == 0);
    TruncatedSeries s = gf_enumerated(-1, 2, 5);
    std::vector<std::string> expect;
    for (const auto& [m, c] : s.terms())
        expect.push_back(std::to_string(m.dq) + "," + std::to_string(m.dt) + "," + c.str());
    CHECK(lines_of(r.out) == expect);
    r = run({"expand", "s_odd", "--order", "3"});
    REQUIRE(r.code == 0);
    CHECK(conforms(load_schema("series.schema.json"), json::parse(r.out)));
}

TEST_CASE("biject psi reproduces the worked example") {
    RunResult r = run({"biject", "psi", "--omega", "3,0,1,2,2,0,1,1,0,1,0", "--class", "even"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "(3 1 1 0 ; 5 2 2 1)\n");
    r = run({"biject", "psi", "--omega", "2,2,0,1,1,2,0,1", "--class", "odd", "--json"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(conforms(load_schema("gfp.schema.json"), j));
    CHECK(j["top"] == json::parse("[3,1,1,0]"));
    CHECK(j["bottom"] == json::parse("[5,3,1,1,0]"));
}

TEST_CASE("biject standup and laydown round-trip through JSON") {
    RunResult up = run({"biject", "standup", "--occ", "1,1", "--lo", "1", "--k", "2"});
    REQUIRE(up.code == 0);
    json w = json::parse(up.out);
    CHECK(conforms(load_schema("omega_state.schema.json"), w));
    std::string omega_csv;
    for (const auto& v : w["values"])
        omega_csv += (omega_csv.empty() ? "" : ",") + std::to_string(v.get<long long>());
    RunResult down = run({"biject", "laydown", "--omega", omega_csv, "--k", "2", "--m",
                          std::to_string(w["m"].get<int>()), "--n", "2"});
    REQUIRE(down.code == 0);
    json eta = json::parse(down.out);
    CHECK(conforms(load_schema("eta_state.schema.json"), eta));
    CHECK(eta["lo"] == 1);
    CHECK(eta["values"] == json::parse("[1,1]"));
}

TEST_CASE("biject phi shifts the offset by k steps") {
    RunResult r = run({"biject", "phi", "--top", "2,0", "--bottom", "2,0", "--l", "1"});
    REQUIRE(r.code == 0);
    // offset grows by k_rep * l = 2
    RunResult j = run({"biject", "phi", "--top", "2,0", "--bottom", "2,0", "--l", "1", "--json"});
    json g = json::parse(j.out);
    CHECK(g["offset"] == 2);
}

TEST_CASE("simulate emits deterministic statistics in both formats") {
    std::vector<std::string> base = {"simulate", "--model",   "asep", "--q",    "1/2",
                                     "--window", "4",         "--total", "4",
                                     "--horizon", "20000",    "--seed",  "7",
                                     "--batches", "4"};
    RunResult a = run(base);
    RunResult b = run(base);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);  // same seed, same output
    std::vector<std::string> ls = lines_of(a.out);
    REQUIRE(ls.size() == 5);
    CHECK(ls[0] == "site,mean,sigma,exact");
    std::vector<std::string> jargs = base;
    jargs.push_back("--json");
    RunResult c = run(jargs);
    REQUIRE(c.code == 0);
    json j = json::parse(c.out);
    CHECK(conforms(load_schema("simulation.schema.json"), j));
    CHECK(j["jumps"] == 20000);
    CHECK(j["sites"].size() == 4);
}

TEST_CASE("enumerate lists arrays and gap states deterministically") {
    RunResult r = run({"enumerate", "gfp", "--n", "4", "--offset", "0", "--json"});
    REQUIRE(r.code == 0);
    std::vector<std::string> ls = lines_of(r.out);
    CHECK(ls.size() == enumerate(4, 0, 2).size());
    json schema = load_schema("gfp.schema.json");
    for (const std::string& line : ls) CHECK(conforms(schema, json::parse(line)));
    r = run({"enumerate", "states", "--k", "2", "--m", "0", "--order", "3", "--json"});
    REQUIRE(r.code == 0);
    json wschema = load_schema("omega_state.schema.json");
    for (const std::string& line : lines_of(r.out)) CHECK(conforms(wschema, json::parse(line)));
}
