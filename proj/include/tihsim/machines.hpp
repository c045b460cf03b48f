#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tihsim/turing.hpp"

namespace tihsim::tm {

// Shared work alphabet for the machines in the construction. The post-processing
// pass rewrites g* markers into s* markers; everything else is counter material.
inline std::vector<std::string> full_alphabet() {
    return {"0", "1", "#", "gA", "gR", "gB", "gX", "sA", "sR", "sB", "sX"};
}

// Binary counter. Repeatedly increments a reversed-binary string in place,
// one increment per q0 -> qf pass, head returning to cell 1 each time.
inline TuringMachine build_mbc() {
    TuringMachine m({"q0", "q1", "q2", "q3", "q4", "q5", "qf"}, {"0", "1", "#"}, "q0", "qf");
    m.add_rule("q0", "0", "qf", "1", Dir::N);
    m.add_rule("q0", "1", "q1", "#", Dir::R);
    m.add_rule("q1", "0", "q2", "#", Dir::R);
    m.add_rule("q1", "1", "q1", "0", Dir::R);
    m.add_rule("q1", "#", "q3", "#", Dir::R);
    m.add_rule("q2", "0", "q4", "0", Dir::L);
    m.add_rule("q2", "1", "q4", "1", Dir::L);
    m.add_rule("q3", "#", "q4", "#", Dir::L);
    m.add_rule("q4", "#", "q5", "1", Dir::L);
    m.add_rule("q5", "0", "q5", "0", Dir::L);
    m.add_rule("q5", "#", "qf", "0", Dir::N);
    for (const char* a : {"0", "1", "#"}) m.add_rule("qf", a, "q0", a, Dir::N);
    return totalize_lex(m);
}

// Post-processing pass: gA/gR/gB (gX)^T becomes sA/sR/sB (sX)^T, with the
// letter cell rewritten on the machine's final step.
inline TuringMachine build_mpost() {
    TuringMachine m({"s0", "sR_", "sL_", "sf"}, full_alphabet(), "s0", "sf");
    for (const char* g : {"gA", "gR", "gB"}) {
        m.add_rule("s0", g, "sR_", g, Dir::R);
        m.add_rule("sR_", g, "sL_", g, Dir::L);
    }
    m.add_rule("sL_", "gA", "sf", "sA", Dir::N);
    m.add_rule("sL_", "gR", "sf", "sR", Dir::N);
    m.add_rule("sL_", "gB", "sf", "sB", Dir::N);
    m.add_rule("s0", "gX", "sf", "gX", Dir::N);
    m.add_rule("sR_", "gX", "sR_", "sX", Dir::R);
    m.add_rule("sL_", "sX", "sL_", "sX", Dir::L);
    for (const char* a : {"0", "1", "#"}) {
        m.add_rule("s0", a, "sf", a, Dir::N);
        m.add_rule("sR_", a, "sL_", a, Dir::L);
    }
    for (const auto& a : full_alphabet()) m.add_rule("sf", a, "s0", a, Dir::N);
    return totalize_lex(m);
}

struct NofxResult {
    std::int64_t operational;  // steps + 2 until the counter first shows x
    std::int64_t closed_form;  // 5 n(x^R) - 2 w(x) - 4 (n(x^R) mod 2)
    int head_min = 1;          // extremes during the first operational-2 steps
    int head_max = 1;
};

// Number of steps for the counter to produce string x, found by simulation.
// The closed form is reported alongside for comparison, not trusted.
inline NofxResult n_of_x(const std::string& x, std::int64_t budget = 0) {
    require(x.size() >= 2, "n_of_x: |x| must be >= 2");
    require(x.back() == '1', "n_of_x: x must end in 1");
    for (char c : x) require(c == '0' || c == '1', "n_of_x: x must be binary");

    cpp_int val = 0;  // n(x^R): x read right to left
    std::int64_t ones = 0;
    for (auto it = x.rbegin(); it != x.rend(); ++it) {
        val = val * 2 + (*it == '1' ? 1 : 0);
        if (*it == '1') ++ones;
    }
    cpp_int cf = 5 * val - 2 * ones - 4 * (val % 2);

    if (budget <= 0) budget = (std::int64_t(1) << (x.size() + 4)) + 64;
    TuringMachine m = build_mbc();
    TapeConfig c = make_config(m, "1" + std::string(x.size() + 4, '#'));
    std::vector<int> target;
    for (char ch : x) target.push_back(m.symbol_id(std::string(1, ch)));

    NofxResult res;
    res.closed_form = cf.convert_to<std::int64_t>();
    int qf = m.final_state();
    std::int64_t t = 0;
    while (true) {
        if (c.state == qf && c.head == 1) {
            bool match = true;
            for (size_t i = 0; i < c.work.size(); ++i) {
                int want = i < target.size() ? target[i] : m.symbol_id("#");
                if (c.work[i] != want) {
                    match = false;
                    break;
                }
            }
            if (match) break;
        }
        require(t < budget, "n_of_x: step budget exceeded before producing x");
        step(m, c);
        ++t;
        res.head_min = std::min(res.head_min, c.head);
        res.head_max = std::max(res.head_max, c.head);
    }
    res.operational = t + 2;
    return res;
}

// Steps from q0 until qf is first reached (one increment operation).
inline std::int64_t increment_steps(const TuringMachine& m, TapeConfig c,
                                    std::int64_t budget = 1 << 20) {
    int qf = m.final_state();
    std::int64_t t = 0;
    while (c.state != qf) {
        require(t < budget, "increment_steps: budget exceeded");
        step(m, c);
        ++t;
    }
    return t;
}

}  // namespace tihsim::tm
