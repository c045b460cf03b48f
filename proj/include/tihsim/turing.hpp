#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "tihsim/common.hpp"

namespace tihsim::tm {

enum class Dir : std::uint8_t { L, N, R };

inline int head_offset(Dir d) { return d == Dir::L ? -1 : (d == Dir::R ? 1 : 0); }

inline char dir_char(Dir d) { return d == Dir::L ? 'L' : (d == Dir::R ? 'R' : 'N'); }

inline Dir dir_from_char(char c) {
    switch (c) {
        case 'L': return Dir::L;
        case 'N': return Dir::N;
        case 'R': return Dir::R;
    }
    throw error("bad direction tag");
}

// One transition: delta(state, work symbol, witness bit) -> (next, written work symbol).
// The witness bit is read-only; wit == -1 means the rule applies to both bits.
struct Rule {
    int state;
    int read;
    int wit;
    int next;
    int write;
    Dir dir;
};

struct ReversibilityReport {
    bool unidirectional = false;
    bool reduced_injective = false;
    bool normal_form = false;
    std::string detail;
    bool reversible() const { return unidirectional && reduced_injective; }
};

// Deterministic single-tape machine with a work track and a read-only witness track.
// Machines are immutable once built; transform functions return new machines.
class TuringMachine {
public:
    TuringMachine(std::vector<std::string> states, std::vector<std::string> alphabet,
                  std::string start, std::string final)
        : state_names_(std::move(states)), alphabet_(std::move(alphabet)) {
        for (size_t i = 0; i < state_names_.size(); ++i)
            state_ids_[state_names_[i]] = static_cast<int>(i);
        for (size_t i = 0; i < alphabet_.size(); ++i)
            symbol_ids_[alphabet_[i]] = static_cast<int>(i);
        require(state_ids_.size() == state_names_.size(), "duplicate state names");
        require(symbol_ids_.size() == alphabet_.size(), "duplicate symbols");
        start_ = state_id(start);
        final_ = state_id(final);
    }

    int state_id(const std::string& name) const {
        auto it = state_ids_.find(name);
        require(it != state_ids_.end(), "unknown state: " + name);
        return it->second;
    }
    int symbol_id(const std::string& name) const {
        auto it = symbol_ids_.find(name);
        require(it != symbol_ids_.end(), "unknown symbol: " + name);
        return it->second;
    }
    bool has_symbol(const std::string& name) const { return symbol_ids_.count(name) > 0; }
    bool has_state(const std::string& name) const { return state_ids_.count(name) > 0; }

    const std::vector<std::string>& states() const { return state_names_; }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    int start() const { return start_; }
    int final_state() const { return final_; }
    int num_states() const { return static_cast<int>(state_names_.size()); }
    int num_symbols() const { return static_cast<int>(alphabet_.size()); }

    void add_rule(const std::string& state, const std::string& read, const std::string& next,
                  const std::string& write, Dir dir, int wit = -1) {
        add_rule_ids(state_id(state), symbol_id(read), state_id(next), symbol_id(write), dir, wit);
    }

    void add_rule_ids(int state, int read, int next, int write, Dir dir, int wit = -1) {
        if (wit < 0) {
            add_rule_ids(state, read, next, write, dir, 0);
            add_rule_ids(state, read, next, write, dir, 1);
            return;
        }
        std::uint64_t k = key(state, read, wit);
        require(!delta_.count(k), "duplicate rule for (" + state_names_[size_t(state)] + ", " +
                                      alphabet_[size_t(read)] + ")");
        delta_[k] = Rule{state, read, wit, next, write, dir};
    }

    void remove_rule(int state, int read, int wit) {
        if (wit < 0) {
            remove_rule(state, read, 0);
            remove_rule(state, read, 1);
            return;
        }
        delta_.erase(key(state, read, wit));
    }

    const Rule* lookup(int state, int read, int wit) const {
        auto it = delta_.find(key(state, read, wit));
        return it == delta_.end() ? nullptr : &it->second;
    }

    std::vector<Rule> rules() const {
        std::vector<Rule> out;
        out.reserve(delta_.size());
        for (const auto& [k, r] : delta_) out.push_back(r);
        std::sort(out.begin(), out.end(), [](const Rule& a, const Rule& b) {
            return std::tie(a.state, a.read, a.wit) < std::tie(b.state, b.read, b.wit);
        });
        return out;
    }

    size_t rule_count() const { return delta_.size(); }

    // Entry direction per state, derived from the rules that enter it.
    // States never entered get N. Meaningful only for unidirectional machines.
    std::vector<Dir> entry_dirs() const {
        std::vector<Dir> d(state_names_.size(), Dir::N);
        std::vector<bool> seen(state_names_.size(), false);
        for (const auto& [k, r] : delta_) {
            if (!seen[size_t(r.next)]) {
                d[size_t(r.next)] = r.dir;
                seen[size_t(r.next)] = true;
            }
        }
        return d;
    }

private:
    std::vector<std::string> state_names_;
    std::vector<std::string> alphabet_;
    std::map<std::string, int> state_ids_;
    std::map<std::string, int> symbol_ids_;
    std::unordered_map<std::uint64_t, Rule> delta_;
    int start_ = 0;
    int final_ = 0;

    std::uint64_t key(int state, int read, int wit) const {
        return (static_cast<std::uint64_t>(state) * static_cast<std::uint64_t>(num_symbols()) +
                static_cast<std::uint64_t>(read)) *
                   2 +
               static_cast<std::uint64_t>(wit);
    }
};

inline ReversibilityReport check_reversible(const TuringMachine& m) {
    ReversibilityReport rep;
    rep.unidirectional = true;
    rep.reduced_injective = true;

    std::vector<int> entry(static_cast<size_t>(m.num_states()), -1);
    std::set<std::tuple<int, int, int>> outputs;
    for (const Rule& r : m.rules()) {
        int d = static_cast<int>(r.dir);
        if (entry[size_t(r.next)] == -1) {
            entry[size_t(r.next)] = d;
        } else if (entry[size_t(r.next)] != d) {
            rep.unidirectional = false;
            rep.detail += "state " + m.states()[size_t(r.next)] + " entered from two directions; ";
        }
        if (!outputs.insert({r.next, r.write, r.wit}).second) {
            rep.reduced_injective = false;
            rep.detail += "output (" + m.states()[size_t(r.next)] + ", " +
                          m.alphabet()[size_t(r.write)] + ") produced twice; ";
        }
    }

    rep.normal_form = true;
    for (int a = 0; a < m.num_symbols(); ++a) {
        for (int w = 0; w < 2; ++w) {
            const Rule* r = m.lookup(m.final_state(), a, w);
            if (!r || r->next != m.start() || r->write != a || r->dir != Dir::N) {
                rep.normal_form = false;
            }
        }
    }
    return rep;
}

struct TapeConfig {
    std::vector<int> work;      // symbol ids, cells 1..len at indices 0..len-1
    std::vector<int> witness;   // read-only bits
    int head = 1;               // 1-based
    int state = 0;

    bool operator==(const TapeConfig& o) const = default;
};

inline TapeConfig make_config(const TuringMachine& m, const std::string& work_syms,
                              const std::string& witness_bits = "") {
    TapeConfig c;
    for (char ch : work_syms) c.work.push_back(m.symbol_id(std::string(1, ch)));
    if (witness_bits.empty()) {
        c.witness.assign(c.work.size(), 0);
    } else {
        require(witness_bits.size() == work_syms.size(), "witness length mismatch");
        for (char ch : witness_bits) c.witness.push_back(ch == '1' ? 1 : 0);
    }
    c.head = 1;
    c.state = m.start();
    return c;
}

// Multi-character symbols separated by spaces, e.g. "gA gX gX #".
inline TapeConfig make_config_tokens(const TuringMachine& m, const std::string& tokens,
                                     const std::string& witness_bits = "") {
    TapeConfig c;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            c.work.push_back(m.symbol_id(cur));
            cur.clear();
        }
    };
    for (char ch : tokens) {
        if (ch == ' ')
            flush();
        else
            cur += ch;
    }
    flush();
    if (witness_bits.empty()) {
        c.witness.assign(c.work.size(), 0);
    } else {
        require(witness_bits.size() == c.work.size(), "witness length mismatch");
        for (char ch : witness_bits) c.witness.push_back(ch == '1' ? 1 : 0);
    }
    c.head = 1;
    c.state = m.start();
    return c;
}

inline std::string work_string(const TuringMachine& m, const TapeConfig& c) {
    bool multi = false;
    for (int s : c.work) multi = multi || m.alphabet()[size_t(s)].size() > 1;
    std::string out;
    for (size_t i = 0; i < c.work.size(); ++i) {
        if (multi && i) out += ' ';
        out += m.alphabet()[size_t(c.work[i])];
    }
    return out;
}

struct StepRecord {
    std::int64_t step;
    int state;
    int head;
    int written;
};

struct RunResult {
    TapeConfig config;
    int min_cell = 0;
    int max_cell = 0;
    std::int64_t steps = 0;
    std::vector<StepRecord> trace;  // filled only when requested
};

// Advance one step in place. Throws on undefined transitions and boundary violations.
inline void step(const TuringMachine& m, TapeConfig& c) {
    require(c.head >= 1 && c.head <= static_cast<int>(c.work.size()), "head out of tape");
    int a = c.work[size_t(c.head - 1)];
    int w = c.witness[size_t(c.head - 1)];
    const Rule* r = m.lookup(c.state, a, w);
    require(r != nullptr, "undefined transition at state " + m.states()[size_t(c.state)] +
                              ", symbol " + m.alphabet()[size_t(a)]);
    c.work[size_t(c.head - 1)] = r->write;
    c.state = r->next;
    int nh = c.head + head_offset(r->dir);
    require(nh >= 1 && nh <= static_cast<int>(c.work.size()), "head moved off the tape");
    c.head = nh;
}

inline RunResult run(const TuringMachine& m, TapeConfig c, std::int64_t t,
                     bool record_trace = false) {
    RunResult res;
    res.min_cell = res.max_cell = c.head;
    for (std::int64_t i = 0; i < t; ++i) {
        int prev_head = c.head;
        step(m, c);
        if (record_trace)
            res.trace.push_back({i + 1, c.state, c.head, c.work[size_t(prev_head - 1)]});
        res.min_cell = std::min(res.min_cell, c.head);
        res.max_cell = std::max(res.max_cell, c.head);
    }
    res.config = std::move(c);
    res.steps = t;
    return res;
}

// Inverse stepper for reversible machines.
class ReverseStepper {
public:
    explicit ReverseStepper(const TuringMachine& m) : m_(&m), entry_(m.entry_dirs()) {
        for (const Rule& r : m.rules()) {
            auto k = std::tuple<int, int, int>{r.next, r.write, r.wit};
            auto [it, fresh] = inv_.insert({k, r});
            if (!fresh) ambiguous_.insert(k);
        }
    }

    // Undo one step. Returns false when the inverse is ambiguous or undefined.
    bool step_back(TapeConfig& c) const {
        Dir d = entry_[size_t(c.state)];
        int prev = c.head - head_offset(d);
        if (prev < 1 || prev > static_cast<int>(c.work.size())) return false;
        int b = c.work[size_t(prev - 1)];
        int w = c.witness[size_t(prev - 1)];
        auto k = std::tuple<int, int, int>{c.state, b, w};
        if (ambiguous_.count(k)) return false;
        auto it = inv_.find(k);
        if (it == inv_.end()) return false;
        c.work[size_t(prev - 1)] = it->second.read;
        c.state = it->second.state;
        c.head = prev;
        return true;
    }

private:
    const TuringMachine* m_;
    std::vector<Dir> entry_;
    std::map<std::tuple<int, int, int>, Rule> inv_;
    std::set<std::tuple<int, int, int>> ambiguous_;
};

// Fill unspecified (state, symbol) pairs by pairing them with unused
// (state, symbol) outputs in lexicographic order. Keeps the reduced map
// injective and entry directions consistent. Only for witness-oblivious tables.
inline TuringMachine totalize_lex(const TuringMachine& m) {
    TuringMachine out(m.states(), m.alphabet(), m.states()[size_t(m.start())],
                      m.states()[size_t(m.final_state())]);
    std::set<std::pair<int, int>> used_outputs;
    for (const Rule& r : m.rules()) {
        if (r.wit == 1) continue;  // witness-oblivious: mirror of wit 0
        const Rule* other = m.lookup(r.state, r.read, 1);
        require(other && other->next == r.next && other->write == r.write && other->dir == r.dir,
                "totalize_lex requires witness-oblivious rules");
        out.add_rule_ids(r.state, r.read, r.next, r.write, r.dir);
        used_outputs.insert({r.next, r.write});
    }
    std::vector<Dir> entry = m.entry_dirs();
    std::vector<std::pair<int, int>> missing, unused;
    for (int q = 0; q < m.num_states(); ++q)
        for (int a = 0; a < m.num_symbols(); ++a) {
            if (!m.lookup(q, a, 0)) missing.push_back({q, a});
            if (!used_outputs.count({q, a})) unused.push_back({q, a});
        }
    require(missing.size() == unused.size(), "totalize_lex: table inconsistent");
    for (size_t i = 0; i < missing.size(); ++i) {
        auto [q, a] = missing[i];
        auto [nq, nb] = unused[i];
        out.add_rule_ids(q, a, nq, nb, entry[size_t(nq)]);
    }
    return out;
}

// Dovetailing: run m1 to completion, then m2, then loop.
inline TuringMachine dovetail(const TuringMachine& m1, const TuringMachine& m2) {
    require(m1.alphabet() == m2.alphabet(), "dovetail: work alphabets differ");
    for (const auto& s : m2.states())
        require(!m1.has_state(s), "dovetail: state name collision: " + s);
    ReversibilityReport r1 = check_reversible(m1), r2 = check_reversible(m2);
    require(r1.reversible() && r1.normal_form, "dovetail: first machine not reversible normal-form");
    require(r2.reversible() && r2.normal_form, "dovetail: second machine not reversible normal-form");

    std::vector<std::string> states = m1.states();
    states.insert(states.end(), m2.states().begin(), m2.states().end());
    TuringMachine out(states, m1.alphabet(), m1.states()[size_t(m1.start())],
                      m2.states()[size_t(m2.final_state())]);
    int off = m1.num_states();
    for (const Rule& r : m1.rules()) {
        if (r.state == m1.final_state()) continue;
        out.add_rule_ids(r.state, r.read, r.next, r.write, r.dir, r.wit);
    }
    for (const Rule& r : m2.rules()) {
        if (r.state == m2.final_state()) continue;
        out.add_rule_ids(r.state + off, r.read, r.next + off, r.write, r.dir, r.wit);
    }
    for (int a = 0; a < out.num_symbols(); ++a) {
        out.add_rule_ids(m1.final_state(), a, m2.start() + off, a, Dir::N);
        out.add_rule_ids(m2.final_state() + off, a, m1.start(), a, Dir::N);
    }
    return out;
}

// Extend the alphabet with one fresh symbol; behavior on old tapes unchanged.
inline TuringMachine add_symbols(const TuringMachine& m, const std::string& sym) {
    require(!m.has_symbol(sym), "add_symbols: symbol already present: " + sym);
    std::vector<std::string> alpha = m.alphabet();
    alpha.push_back(sym);
    TuringMachine out(m.states(), alpha, m.states()[size_t(m.start())],
                      m.states()[size_t(m.final_state())]);
    for (const Rule& r : m.rules()) out.add_rule_ids(r.state, r.read, r.next, r.write, r.dir, r.wit);
    std::vector<Dir> entry = m.entry_dirs();
    int a = out.symbol_id(sym);
    for (int q = 0; q < m.num_states(); ++q) {
        if (q == m.start())
            out.add_rule_ids(q, a, m.final_state(), a, entry[size_t(m.final_state())]);
        else if (q == m.final_state())
            out.add_rule_ids(q, a, m.start(), a, entry[size_t(m.start())]);
        else
            out.add_rule_ids(q, a, q, a, entry[size_t(q)]);
    }
    return out;
}

// Extend the state set with inert states.
inline TuringMachine add_states(const TuringMachine& m, const std::vector<std::string>& names) {
    std::vector<std::string> states = m.states();
    for (const auto& name : names) {
        require(!m.has_state(name), "add_states: state already present: " + name);
        states.push_back(name);
    }
    TuringMachine out(states, m.alphabet(), m.states()[size_t(m.start())],
                      m.states()[size_t(m.final_state())]);
    for (const Rule& r : m.rules()) out.add_rule_ids(r.state, r.read, r.next, r.write, r.dir, r.wit);
    for (const auto& name : names) {
        int q = out.state_id(name);
        for (int a = 0; a < out.num_symbols(); ++a) out.add_rule_ids(q, a, q, a, Dir::N);
    }
    return out;
}

inline TuringMachine add_states(const TuringMachine& m, const std::string& name) {
    return add_states(m, std::vector<std::string>{name});
}

// After halting on a trigger symbol, sweep right forever leaving the tape intact.
inline TuringMachine transform_timewaste(const TuringMachine& m,
                                         const std::vector<std::string>& triggers) {
    ReversibilityReport rep = check_reversible(m);
    require(rep.reversible() && rep.normal_form,
            "transform_timewaste: machine must be reversible normal-form");
    for (const auto& t : triggers)
        require(m.has_symbol(t), "transform_timewaste: trigger symbol missing: " + t);

    std::vector<std::string> states = m.states();
    std::string wander = "q*";
    while (m.has_state(wander)) wander += "*";
    states.push_back(wander);
    TuringMachine out(states, m.alphabet(), m.states()[size_t(m.start())],
                      m.states()[size_t(m.final_state())]);
    std::set<int> trig;
    for (const auto& t : triggers) trig.insert(m.symbol_id(t));

    for (const Rule& r : m.rules()) {
        if (r.state == m.final_state() && trig.count(r.read)) continue;
        out.add_rule_ids(r.state, r.read, r.next, r.write, r.dir, r.wit);
    }
    int qs = out.state_id(wander);
    for (int a = 0; a < out.num_symbols(); ++a) {
        if (trig.count(a)) {
            out.add_rule_ids(m.final_state(), a, qs, a, Dir::R);
            out.add_rule_ids(qs, a, m.start(), a, Dir::N);
        } else {
            out.add_rule_ids(qs, a, qs, a, Dir::R);
        }
    }
    return out;
}

inline TuringMachine with_renamed_states(const TuringMachine& m, const std::string& suffix) {
    std::vector<std::string> states;
    for (const auto& s : m.states()) states.push_back(s + suffix);
    TuringMachine out(states, m.alphabet(), m.states()[size_t(m.start())] + suffix,
                      m.states()[size_t(m.final_state())] + suffix);
    for (const Rule& r : m.rules()) out.add_rule_ids(r.state, r.read, r.next, r.write, r.dir, r.wit);
    return out;
}

}  // namespace tihsim::tm
