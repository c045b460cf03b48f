#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "tihsim/blocks.hpp"
#include "tihsim/clock.hpp"
#include "tihsim/common.hpp"
#include "tihsim/oracle.hpp"
#include "tihsim/spectral.hpp"
#include "tihsim/turing.hpp"

namespace tihsim::formats {

using nlohmann::json;

// --- machines ---------------------------------------------------------------

inline json machine_to_json(const tm::TuringMachine& m) {
    json j;
    std::vector<tm::Dir> dirs = m.entry_dirs();
    j["states"] = json::array();
    for (int q = 0; q < m.num_states(); ++q)
        j["states"].push_back(
            {{"name", m.states()[size_t(q)]}, {"dir", std::string(1, tm::dir_char(dirs[size_t(q)]))}});
    j["alphabet"] = m.alphabet();
    j["start"] = m.states()[size_t(m.start())];
    j["final"] = m.states()[size_t(m.final_state())];
    j["rules"] = json::array();
    for (const tm::Rule& r : m.rules()) {
        if (r.wit == 1) {
            const tm::Rule* zero = m.lookup(r.state, r.read, 0);
            if (zero && zero->next == r.next && zero->write == r.write) continue;  // merged
        }
        json e = {{"state", m.states()[size_t(r.state)]},
                  {"read", m.alphabet()[size_t(r.read)]},
                  {"write", m.alphabet()[size_t(r.write)]},
                  {"next", m.states()[size_t(r.next)]}};
        const tm::Rule* other = m.lookup(r.state, r.read, 1 - r.wit);
        if (!other || other->next != r.next || other->write != r.write) e["wit"] = r.wit;
        j["rules"].push_back(e);
    }
    return j;
}

inline tm::TuringMachine machine_from_json(const json& j) {
    std::vector<std::string> states, alphabet;
    std::map<std::string, tm::Dir> dirs;
    for (const auto& s : j.at("states")) {
        std::string name = s.at("name").get<std::string>();
        states.push_back(name);
        dirs[name] = tm::dir_from_char(s.at("dir").get<std::string>().at(0));
    }
    for (const auto& a : j.at("alphabet")) alphabet.push_back(a.get<std::string>());
    tm::TuringMachine m(states, alphabet, j.at("start").get<std::string>(),
                        j.at("final").get<std::string>());
    for (const auto& r : j.at("rules")) {
        std::string next = r.at("next").get<std::string>();
        int wit = r.contains("wit") ? r.at("wit").get<int>() : -1;
        m.add_rule(r.at("state").get<std::string>(), r.at("read").get<std::string>(), next,
                   r.at("write").get<std::string>(), dirs.at(next), wit);
    }
    return m;
}

// --- oracle instances ---------------------------------------------------------

inline json input_entry_to_json(const oracle::InputEntry& e) {
    json j;
    j["m"] = e.m;
    j["queries"] = json::array();
    for (const auto& [key, q] : e.queries)
        j["queries"].push_back({{"i", key.first}, {"given", key.second}, {"q", q}});
    j["f"] = json::array();
    for (const auto& [y, v] : e.f) j["f"].push_back({{"y", y}, {"value", v}});
    return j;
}

inline oracle::InputEntry input_entry_from_json(const json& j) {
    oracle::InputEntry e;
    e.m = j.at("m").get<int>();
    for (const auto& q : j.at("queries"))
        e.queries[{q.at("i").get<int>(), q.at("given").get<std::string>()}] =
            q.at("q").get<std::string>();
    for (const auto& f : j.at("f"))
        e.f[f.at("y").get<std::string>()] = f.at("value").get<std::int64_t>();
    return e;
}

inline json instance_to_json(const oracle::OracleInstance& inst) {
    json j;
    j["name"] = inst.name;
    j["witness_bits_per_query"] = inst.witness_bits_per_query;
    j["accept_witness"] = inst.accept_witness;
    j["language"] = json::array();
    for (const auto& q : inst.language) j["language"].push_back(q);
    j["inputs"] = json::array();
    for (const auto& [x, e] : inst.inputs) {
        json ej = input_entry_to_json(e);
        ej["x"] = x;
        j["inputs"].push_back(ej);
    }
    if (inst.fallback) j["fallback"] = input_entry_to_json(*inst.fallback);
    return j;
}

inline oracle::OracleInstance instance_from_json(const json& j) {
    oracle::OracleInstance inst;
    inst.name = j.at("name").get<std::string>();
    inst.witness_bits_per_query = j.at("witness_bits_per_query").get<int>();
    inst.accept_witness = j.at("accept_witness").get<std::string>();
    for (const auto& q : j.at("language")) inst.language.insert(q.get<std::string>());
    for (const auto& e : j.at("inputs"))
        inst.inputs[e.at("x").get<std::int64_t>()] = input_entry_from_json(e);
    if (j.contains("fallback")) inst.fallback = input_entry_from_json(j.at("fallback"));
    return inst;
}

inline std::string instance_digest(const oracle::OracleInstance& inst) {
    return fnv1a_hex(instance_to_json(inst).dump());
}

// --- matrix specs ----------------------------------------------------------------

inline spectral::MatrixSpec matrix_spec_from_json(const json& j) {
    spectral::MatrixSpec spec;
    std::string base = j.value("base", "cycle");
    spec.base = base == "path" ? spectral::Base::Path : spectral::Base::Cycle;
    spec.size = j.at("L").get<std::int64_t>();
    if (j.contains("penalties"))
        for (const auto& p : j.at("penalties"))
            spec.penalties.push_back(
                {p.at("index").get<std::int64_t>(), p.at("weight").get<double>()});
    if (j.contains("periodic")) {
        const auto& d = j.at("periodic");
        spec.periodic = spectral::PeriodicSpec{d.at("r").get<std::int64_t>(),
                                               d.at("s").get<std::int64_t>(),
                                               d.at("l").get<std::int64_t>()};
    }
    return spec;
}

inline json matrix_spec_to_json(const spectral::MatrixSpec& spec) {
    json j;
    j["base"] = spec.base == spectral::Base::Path ? "path" : "cycle";
    j["L"] = spec.size;
    j["penalties"] = json::array();
    for (const auto& p : spec.penalties)
        j["penalties"].push_back({{"index", p.index}, {"weight", p.weight}});
    if (spec.periodic)
        j["periodic"] = {{"r", spec.periodic->r}, {"s", spec.periodic->s}, {"l", spec.periodic->l}};
    return j;
}

// --- clock serialization -----------------------------------------------------------

inline json clock_config_to_json(const clk::ClockConfig& c) {
    json t1 = json::array(), t2 = json::array(), t3 = json::array();
    for (auto v : c.track1) t1.push_back(clk::t1_token(v));
    for (auto v : c.track2) t2.push_back(clk::t2_token(v));
    for (auto v : c.track3) t3.push_back(clk::t3_token(v));
    return {{"track1", t1}, {"track2", t2}, {"track3", t3}};
}

inline json graph_report_to_json(const clk::GraphReport& r) {
    return {{"N", r.n},
            {"T", r.timer},
            {"nodes", r.node_count},
            {"correct", r.correct_count},
            {"expected_correct", r.expected_correct},
            {"cycle_length", r.cycle_length},
            {"single_correct_cycle", r.single_correct_cycle},
            {"tracks12_spacing_ok", r.tracks12_spacing_ok},
            {"degrees_ok", r.degrees_ok},
            {"timer_conserved", r.timer_conserved},
            {"incorrect_paths_ok", r.incorrect_paths_ok},
            {"max_incorrect_path", r.max_incorrect_path},
            {"stuck_nodes", r.stuck_nodes},
            {"ok", r.ok()}};
}

inline std::string graph_to_dot(const clk::ConfigGraph& g) {
    std::string out = "digraph clock {\n";
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        if (g.succ[i] >= 0)
            out += "  n" + std::to_string(i) + " -> n" + std::to_string(g.succ[i]) + ";\n";
        else if (g.succ[i] == -2)
            out += "  n" + std::to_string(i) + " [shape=box,label=\"illegal\"];\n";
    }
    out += "}\n";
    return out;
}

inline json graph_adjacency_to_json(const clk::ConfigGraph& g) {
    json nodes = json::array(), edges = json::array();
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        nodes.push_back(g.nodes[i].key());
        if (g.succ[i] >= 0) edges.push_back({{"from", i}, {"to", g.succ[i]}});
    }
    return {{"nodes", nodes}, {"edges", edges}};
}

// --- content-addressed result cache ---------------------------------------------

class ResultCache {
public:
    explicit ResultCache(std::string dir) : dir_(std::move(dir)) {
        if (!dir_.empty()) std::filesystem::create_directories(dir_);
    }

    static std::string default_dir() {
        const char* env = std::getenv("TIHSIM_CACHE");
        return env ? std::string(env) : std::string();
    }

    bool enabled() const { return !dir_.empty(); }

    std::optional<json> get(const std::string& key) const {
        if (!enabled()) return std::nullopt;
        std::ifstream in(path_for(key));
        if (!in) return std::nullopt;
        json j = json::parse(in, nullptr, false);
        if (j.is_discarded() || j.value("key", "") != key) return std::nullopt;
        return j.at("value");
    }

    void put(const std::string& key, const json& value) const {
        if (!enabled()) return;
        std::ofstream out(path_for(key));
        out << json{{"key", key}, {"value", value}}.dump(2) << "\n";
    }

private:
    std::string dir_;

    std::string path_for(const std::string& key) const {
        return (std::filesystem::path(dir_) / (fnv1a_hex(key) + ".json")).string();
    }
};

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    require(bool(in), "cannot open " + path);
    return json::parse(in);
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    require(bool(out), "cannot write " + path);
    out << text;
}

}  // namespace tihsim::formats
