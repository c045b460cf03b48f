#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tihsim/common.hpp"

namespace tihsim::oracle {

// Per-input behavior: query count, adaptive query strings, and the output value
// as a function of the guess string y.
struct InputEntry {
    int m = 0;
    // (query index i >= 1, answers to queries 1..i-1) -> query string
    std::map<std::pair<int, std::string>, std::string> queries;
    // full y bit string -> f(x, y)
    std::map<std::string, std::int64_t> f;
};

// Semantic model of the machine/oracle/verifier triple: adaptive query
// generation, a decidable query language, a witness verifier, and the output
// value. Immutable shared state; all member queries are pure.
struct OracleInstance {
    std::string name;
    int witness_bits_per_query = 1;        // r
    std::string accept_witness = "1";      // V accepts (q, u) iff q in L and u matches
    std::set<std::string> language;        // the yes-instances
    std::map<std::int64_t, InputEntry> inputs;
    std::optional<InputEntry> fallback;    // used for inputs without an explicit entry

    const InputEntry& entry(std::int64_t x) const {
        auto it = inputs.find(x);
        if (it != inputs.end()) return it->second;
        require(fallback.has_value(), name + ": no entry for input " + std::to_string(x));
        return *fallback;
    }

    int query_count(std::int64_t x) const { return entry(x).m; }

    std::string query(std::int64_t x, int i, const std::string& prefix) const {
        const InputEntry& e = entry(x);
        auto it = e.queries.find({i, prefix});
        if (it != e.queries.end()) return it->second;
        // fallback rule: query strings derived from the input and the path
        if (i == 1) return "a" + std::to_string(x);
        return "b" + std::to_string(x) + (prefix.back() == '1' ? "y" : "n");
    }

    bool in_language(const std::string& q) const { return language.count(q) > 0; }

    bool verifier_accepts(const std::string& q, const std::string& u) const {
        return in_language(q) && u == accept_witness;
    }

    std::int64_t f_of(std::int64_t x, const std::string& y) const {
        const InputEntry& e = entry(x);
        require(static_cast<int>(y.size()) == e.m, "f_of: |y| must equal the query count");
        auto it = e.f.find(y);
        return it == e.f.end() ? 0 : it->second;
    }

    // The string of true oracle answers, built adaptively.
    std::string correct_answers(std::int64_t x) const {
        const InputEntry& e = entry(x);
        std::string y;
        for (int i = 1; i <= e.m; ++i) y += in_language(query(x, i, y)) ? '1' : '0';
        return y;
    }

    // y contains a yes guess on a query whose true answer is no.
    bool y_rejected(std::int64_t x, const std::string& y) const {
        const InputEntry& e = entry(x);
        require(static_cast<int>(y.size()) == e.m, "y_rejected: |y| must equal the query count");
        std::string prefix;
        for (int i = 1; i <= e.m; ++i) {
            char yi = y[size_t(i - 1)];
            if (yi == '1' && !in_language(query(x, i, prefix))) return true;
            prefix += yi;
        }
        return false;
    }

    // Search over witness segments for one that satisfies the verifier on
    // every yes-guessed query. Returns m*r bits on success.
    std::optional<std::string> find_accepting_segments(std::int64_t x, const std::string& y) const {
        const InputEntry& e = entry(x);
        std::string u;
        std::string prefix;
        for (int i = 1; i <= e.m; ++i) {
            char yi = y[size_t(i - 1)];
            std::string q = query(x, i, prefix);
            prefix += yi;
            if (yi != '1') {
                u += std::string(size_t(witness_bits_per_query), '0');
                continue;
            }
            bool found = false;
            for (std::int64_t bits = 0; bits < (std::int64_t(1) << witness_bits_per_query);
                 ++bits) {
                std::string cand;
                for (int b = 0; b < witness_bits_per_query; ++b)
                    cand += ((bits >> b) & 1) ? '1' : '0';
                if (verifier_accepts(q, cand)) {
                    u += cand;
                    found = true;
                    break;
                }
            }
            if (!found) return std::nullopt;
        }
        return u;
    }
};

// T(x,y) = f(x,y) + 2^m [ 4^(m+1) + sum_j y_j 4^(m-j+1) ].
// The timer-length formula that prices every no-guess exponentially.
inline cpp_int t_of_xy(const OracleInstance& inst, std::int64_t x, const std::string& y) {
    const InputEntry& e = inst.entry(x);
    require(static_cast<int>(y.size()) == e.m, "t_of_xy: |y| must equal the query count");
    cpp_int f = inst.f_of(x, y);
    require(f < (cpp_int(1) << e.m), "t_of_xy: f(x,y) does not fit below 2^m");
    cpp_int acc = cpp_int(1) << (2 * (e.m + 1));  // 4^(m+1)
    for (int j = 1; j <= e.m; ++j)
        if (y[size_t(j - 1)] == '1') acc += cpp_int(1) << (2 * (e.m - j + 1));
    return f + (cpp_int(1) << e.m) * acc;
}

// --- toy instances ----------------------------------------------------------

// No queries at all; the ground energy encodes only the constant output.
inline OracleInstance toy_m0() {
    OracleInstance inst;
    inst.name = "toy-m0";
    inst.witness_bits_per_query = 1;
    InputEntry def;
    def.m = 0;
    def.f[""] = 0;
    inst.fallback = def;
    return inst;
}

// One query per input.
inline OracleInstance toy_m1() {
    OracleInstance inst;
    inst.name = "toy-m1";
    inst.witness_bits_per_query = 1;
    inst.language = {"a1", "a3", "a10"};
    InputEntry def;
    def.m = 1;
    def.f["0"] = 0;
    def.f["1"] = 0;
    inst.fallback = def;

    auto put = [&inst](std::int64_t x, std::int64_t f0, std::int64_t f1) {
        InputEntry e;
        e.m = 1;
        e.f["0"] = f0;
        e.f["1"] = f1;
        inst.inputs[x] = e;
    };
    put(1, 0, 1);   // a1 in L, correct answer 1, f = 1
    put(2, 0, 1);   // a2 not in L, correct answer 0, f = 0
    put(3, 0, 1);   // a3 in L, correct answer 1, f = 1
    put(10, 1, 0);  // a10 in L; used by chain-level tests
    return inst;
}

// Two adaptive queries: the second query string depends on the first answer.
inline OracleInstance toy_m2() {
    OracleInstance inst;
    inst.name = "toy-m2";
    inst.witness_bits_per_query = 1;
    inst.language = {"a2", "b2y", "b3n"};

    InputEntry def;
    def.m = 2;
    for (const char* y : {"00", "01", "10", "11"}) def.f[y] = 0;
    inst.fallback = def;

    InputEntry e1;  // a single query here keeps the early decay ratios in range
    e1.m = 1;
    e1.f["0"] = 0;
    e1.f["1"] = 1;
    inst.inputs[1] = e1;

    InputEntry e2;
    e2.m = 2;
    e2.f["00"] = 0;
    e2.f["01"] = 1;
    e2.f["10"] = 2;
    e2.f["11"] = 3;  // correct answers are (1,1): a2 in L, b2y in L
    inst.inputs[2] = e2;

    InputEntry e3;
    e3.m = 2;
    e3.f["00"] = 0;
    e3.f["01"] = 1;  // correct answers are (0,1): a3 not in L, b3n in L
    e3.f["10"] = 2;
    e3.f["11"] = 3;
    inst.inputs[3] = e3;
    return inst;
}

inline OracleInstance toy_instance(const std::string& name) {
    if (name == "toy-m0") return toy_m0();
    if (name == "toy-m1") return toy_m1();
    if (name == "toy-m2") return toy_m2();
    throw error("unknown toy instance: " + name);
}

}  // namespace tihsim::oracle
