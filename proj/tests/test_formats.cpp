#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "tihsim/formats.hpp"
#include "tihsim/verify.hpp"

using namespace tihsim;
using nlohmann::json;

namespace {

std::string repo_path(const std::string& rel) {
    // tests run from the build tree; the data files live beside the sources
    for (const char* base : {"..", "../..", "../../..", "."}) {
        std::filesystem::path p = std::filesystem::path(base) / rel;
        if (std::filesystem::exists(p)) return p.string();
    }
    return (std::filesystem::path(TIHSIM_SOURCE_DIR) / rel).string();
}

}  // namespace

TEST_CASE("machine JSON round trip") {
    tm::TuringMachine m = tm::build_mbc();
    json j = formats::machine_to_json(m);
    tm::TuringMachine back = formats::machine_from_json(j);
    CHECK(back.states() == m.states());
    CHECK(back.alphabet() == m.alphabet());
    CHECK(back.rule_count() == m.rule_count());
    tm::ReversibilityReport rep = tm::check_reversible(back);
    CHECK(rep.unidirectional);
    CHECK(rep.reduced_injective);
    CHECK(rep.normal_form);

    tm::TapeConfig a = tm::make_config(m, "101#####");
    tm::TapeConfig b = tm::make_config(back, "101#####");
    for (int i = 0; i < 200; ++i) {
        tm::step(m, a);
        tm::step(back, b);
        REQUIRE(a == b);
    }
}

TEST_CASE("witness-dependent rules survive the round trip") {
    oracle::OracleInstance inst = oracle::toy_m1();
    tm::TuringMachine tv = blocks::build_toy_tv(inst, blocks::toy_params_for(inst));
    tm::TuringMachine back = formats::machine_from_json(formats::machine_to_json(tv));
    CHECK(back.rule_count() == tv.rule_count());
    for (const tm::Rule& r : tv.rules()) {
        const tm::Rule* o = back.lookup(r.state, r.read, r.wit);
        REQUIRE(o != nullptr);
        REQUIRE(o->next == r.next);
        REQUIRE(o->write == r.write);
        REQUIRE(o->dir == r.dir);
    }
}

TEST_CASE("instance JSON round trip and the shipped files") {
    for (const char* name : {"toy-m0", "toy-m1", "toy-m2"}) {
        oracle::OracleInstance inst = oracle::toy_instance(name);
        oracle::OracleInstance back =
            formats::instance_from_json(formats::instance_to_json(inst));
        CHECK(formats::instance_to_json(back) == formats::instance_to_json(inst));

        std::string path = repo_path(std::string("data/instances/") + name + ".json");
        oracle::OracleInstance file = formats::instance_from_json(formats::load_json_file(path));
        CHECK(formats::instance_to_json(file) == formats::instance_to_json(inst));
    }
}

TEST_CASE("matrix spec round trip") {
    spectral::MatrixSpec spec = spectral::cycle_with_penalties(9, {{8, 0.5}, {0, 0.5}});
    spectral::MatrixSpec back = formats::matrix_spec_from_json(formats::matrix_spec_to_json(spec));
    CHECK(back.size == spec.size);
    CHECK(back.penalties.size() == spec.penalties.size());
    CHECK(spectral::assemble(back) == spectral::assemble(spec));

    spectral::MatrixSpec per = spectral::cycle_with_periodic(3, 5, 1);
    spectral::MatrixSpec back2 = formats::matrix_spec_from_json(formats::matrix_spec_to_json(per));
    CHECK(spectral::assemble(back2) == spectral::assemble(per));
}

TEST_CASE("result cache stores and serves by content key") {
    std::string dir = (std::filesystem::temp_directory_path() / "tihsim-cache-test").string();
    std::filesystem::remove_all(dir);
    formats::ResultCache cache(dir);
    REQUIRE(cache.enabled());
    CHECK_FALSE(cache.get("lambda0/abc/k=1/bits=64").has_value());
    cache.put("lambda0/abc/k=1/bits=64", json{{"v", 42}});
    auto hit = cache.get("lambda0/abc/k=1/bits=64");
    REQUIRE(hit.has_value());
    CHECK((*hit).at("v") == 42);

    // a different digest never serves the same entry
    CHECK_FALSE(cache.get("lambda0/DIFFERENT/k=1/bits=64").has_value());
    std::filesystem::remove_all(dir);
}

TEST_CASE("instance digests separate instances") {
    CHECK(formats::instance_digest(oracle::toy_m0()) != formats::instance_digest(oracle::toy_m1()));
    CHECK(formats::instance_digest(oracle::toy_m1()) != formats::instance_digest(oracle::toy_m2()));
}

TEST_CASE("clock report and graph exports are well formed") {
    clk::ConfigGraph g;
    clk::GraphReport rep = clk::build_graph(4, 1, &g);
    json jr = formats::graph_report_to_json(rep);
    CHECK(jr.at("ok") == true);
    json adj = formats::graph_adjacency_to_json(g);
    CHECK(adj.at("nodes").size() == size_t(rep.node_count));
    std::string dot = formats::graph_to_dot(g);
    CHECK(dot.find("digraph") != std::string::npos);
}

TEST_CASE("repeated verification runs produce identical output") {
    std::string a = verify::format_results(verify::run_all({3, 5, 10, 12}));
    std::string b = verify::format_results(verify::run_all({3, 5, 10, 12}));
    CHECK(a == b);
    CHECK(a.find("PASS") != std::string::npos);
}
