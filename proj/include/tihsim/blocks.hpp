#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tihsim/bigfixed.hpp"
#include "tihsim/clock.hpp"
#include "tihsim/common.hpp"
#include "tihsim/machines.hpp"
#include "tihsim/oracle.hpp"
#include "tihsim/spectral.hpp"
#include "tihsim/turing.hpp"

namespace tihsim::blocks {

using fx::BigFixed;
using oracle::OracleInstance;

// ---------------------------------------------------------------------------
// Toy timer/verification machine, generated from the instance tables.
//
// After the dovetailed counter finishes its increment, the machine scans a
// fixed window, branches on what it saw (string z, guesses y, witness bits u),
// returns home, writes the marker letter and T(z,y) tally cells, records the
// scanned window past the tally so no information is lost, and unwinds back to
// a single final state. Every rule is injective by construction.
// ---------------------------------------------------------------------------

struct ToyTvParams {
    int scan_depth = 5;     // cells read before committing to a branch
    int wit_cells = 0;      // leading cells whose witness bits matter (m * (1+r))
    std::int64_t t_cap = 400;  // leaves with a larger tally are left undefined
};

namespace detail {

struct Leaf {
    std::string zw;    // scanned work symbols, length scan_depth
    std::string wits;  // witness bits at the first wit_cells cells
};

inline std::optional<std::string> parse_counter_string(const std::string& zw) {
    size_t hash = zw.find('#');
    if (hash == std::string::npos || hash == 0) return std::nullopt;
    std::string z = zw.substr(0, hash);
    for (size_t i = hash; i < zw.size(); ++i)
        if (zw[i] != '#') return std::nullopt;
    for (char c : z)
        if (c != '0' && c != '1') return std::nullopt;
    if (z.back() != '1') return std::nullopt;
    return z;
}

inline std::int64_t counter_value(const std::string& z) {
    std::int64_t v = 0;
    for (auto it = z.rbegin(); it != z.rend(); ++it) v = v * 2 + (*it == '1' ? 1 : 0);
    return v;
}

}  // namespace detail

inline tm::TuringMachine build_toy_tv(const OracleInstance& inst, const ToyTvParams& prm) {
    using tm::Dir;
    const int D = prm.scan_depth;
    const int WC = prm.wit_cells;
    require(WC <= D, "build_toy_tv: wit_cells must not exceed scan_depth");

    // enumerate scan prefixes and leaves
    std::vector<std::string> states = {"tv0", "tvf"};
    std::vector<std::pair<std::string, std::string>> prefixes = {{"", ""}};  // (work, wits)
    std::vector<detail::Leaf> leaves;
    for (int depth = 0; depth < D; ++depth) {
        std::vector<std::pair<std::string, std::string>> next;
        for (const auto& [zw, wits] : prefixes) {
            if (static_cast<int>(zw.size()) != depth) continue;
            for (char a : {'0', '1', '#'}) {
                if (depth < WC) {
                    for (char w : {'0', '1'}) next.push_back({zw + a, wits + w});
                } else {
                    next.push_back({zw + a, wits});
                }
            }
        }
        for (auto& p : next) prefixes.push_back(p);
        if (depth + 1 == D)
            for (auto& p : next)
                if (static_cast<int>(p.first.size()) == D) leaves.push_back({p.first, p.second});
    }
    for (const auto& [zw, wits] : prefixes)
        if (!zw.empty()) states.push_back("sc|" + zw + "|" + wits);

    // leaf wiring decided ahead of state registration
    struct Plan {
        detail::Leaf leaf;
        std::string letter;  // "gA" or "gR"
        std::int64_t tally;  // T(z, y)
    };
    std::vector<Plan> plans;
    for (const detail::Leaf& lf : leaves) {
        auto z = detail::parse_counter_string(lf.zw);
        if (!z) continue;
        std::int64_t v = detail::counter_value(*z);
        const oracle::InputEntry& e = inst.entry(v);
        if (e.m * (1 + inst.witness_bits_per_query) > WC) continue;  // not scannable
        std::string y = lf.wits.substr(0, size_t(e.m));
        bool reject = false;
        std::string prefix;
        for (int i = 1; i <= e.m; ++i) {
            char yi = y[size_t(i - 1)];
            std::string q = inst.query(v, i, prefix);
            prefix += yi;
            if (yi == '1') {
                std::string u = lf.wits.substr(size_t(e.m + (i - 1) * inst.witness_bits_per_query),
                                               size_t(inst.witness_bits_per_query));
                if (!inst.verifier_accepts(q, u)) reject = true;
            }
        }
        cpp_int tally = oracle::t_of_xy(inst, v, y);
        if (tally > prm.t_cap) continue;
        require(tally >= D - 1, "build_toy_tv: tally too small for the scan window");
        plans.push_back({lf, reject ? "gR" : "gA", tally.convert_to<std::int64_t>()});
    }

    auto leaf_tag = [](const detail::Leaf& lf) { return lf.zw + "|" + lf.wits; };
    std::set<std::string> unwind_states;
    for (const Plan& p : plans) {
        std::string tag = leaf_tag(p.leaf);
        for (int j = D - 1; j >= 0; --j) states.push_back("rt|" + tag + "|" + std::to_string(j));
        for (std::int64_t c = 1; c <= p.tally; ++c)
            states.push_back("wr|" + tag + "|" + std::to_string(c));
        for (int k = 0; k < D; ++k) states.push_back("dz|" + tag + "|" + std::to_string(k));
        for (int k = 0; k < WC; ++k) states.push_back("dw|" + tag + "|" + std::to_string(k));
        states.push_back("tn|" + tag);
        // unwind states shed one recorded symbol at a time
        for (int k = WC; k >= 1; --k)
            unwind_states.insert("uw|" + p.leaf.zw + "|" + p.leaf.wits.substr(0, size_t(k)));
        for (int k = D; k >= 1; --k) unwind_states.insert("uw|" + p.leaf.zw.substr(0, size_t(k)) + "|");
    }
    for (const auto& s : unwind_states) states.push_back(s);
    states.push_back("usweep");

    tm::TuringMachine m(states, tm::full_alphabet(), "tv0", "tvf");

    // scan: record and step right
    for (const auto& [zw, wits] : prefixes) {
        int depth = static_cast<int>(zw.size());
        if (depth == D) continue;
        std::string from = depth == 0 ? "tv0" : "sc|" + zw + "|" + wits;
        for (char a : {'0', '1', '#'}) {
            std::string as(1, a);
            if (depth < WC) {
                for (char w : {'0', '1'}) {
                    m.add_rule(from, as, "sc|" + zw + a + "|" + wits + w, as, Dir::R, w - '0');
                }
            } else {
                m.add_rule(from, as, "sc|" + zw + a + "|" + wits, as, Dir::R);
            }
        }
    }

    for (const Plan& p : plans) {
        const std::string tag = leaf_tag(p.leaf);
        const std::string& zw = p.leaf.zw;
        const std::string& wits = p.leaf.wits;
        auto wit_at = [&](int cell) { return cell < WC ? wits[size_t(cell)] - '0' : -1; };

        // turn around under the cell past the window, keeping it intact
        for (char a : {'0', '1', '#'})
            m.add_rule("sc|" + zw + "|" + wits, std::string(1, a),
                       "rt|" + tag + "|" + std::to_string(D - 1), std::string(1, a), Dir::L);

        // sweep home over the recorded cells
        for (int j = D - 1; j >= 1; --j)
            m.add_rule("rt|" + tag + "|" + std::to_string(j), std::string(1, zw[size_t(j)]),
                       "rt|" + tag + "|" + std::to_string(j - 1), std::string(1, zw[size_t(j)]),
                       Dir::L, wit_at(j));

        // letter at the start cell, then the tally cells
        m.add_rule("rt|" + tag + "|0", std::string(1, zw[0]),
                   p.tally >= 1 ? "wr|" + tag + "|1" : "dz|" + tag + "|0", p.letter, Dir::R,
                   wit_at(0));
        for (std::int64_t c = 1; c <= p.tally; ++c) {
            std::string prior = c < D ? std::string(1, zw[size_t(c)]) : "#";
            std::string next =
                c < p.tally ? "wr|" + tag + "|" + std::to_string(c + 1) : "dz|" + tag + "|0";
            m.add_rule("wr|" + tag + "|" + std::to_string(c), prior, next, "gX", Dir::R,
                       wit_at(static_cast<int>(c)));
        }

        // record the scanned window after the tally
        for (int k = 0; k < D; ++k) {
            std::string next = k + 1 < D           ? "dz|" + tag + "|" + std::to_string(k + 1)
                               : (WC > 0 ? "dw|" + tag + "|0" : "tn|" + tag);
            m.add_rule("dz|" + tag + "|" + std::to_string(k), "#", next, std::string(1, zw[size_t(k)]),
                       Dir::R);
        }
        for (int k = 0; k < WC; ++k) {
            std::string next = k + 1 < WC ? "dw|" + tag + "|" + std::to_string(k + 1) : "tn|" + tag;
            m.add_rule("dw|" + tag + "|" + std::to_string(k), "#", next, std::string(1, wits[size_t(k)]),
                       Dir::R);
        }

        // turn and unwind, shedding the record in reverse order
        std::string at = WC > 0 ? "uw|" + zw + "|" + wits : "uw|" + zw + "|";
        m.add_rule("tn|" + tag, "#", at, "#", Dir::L);
        for (int k = WC; k >= 1; --k) {
            std::string next = k > 1 ? "uw|" + zw + "|" + wits.substr(0, size_t(k - 1))
                                     : "uw|" + zw + "|";
            std::string sym(1, wits[size_t(k - 1)]);
            if (!m.lookup(m.state_id(at), m.symbol_id(sym), 0))
                m.add_rule(at, sym, next, sym, Dir::L);
            at = next;
        }
        for (int k = D; k >= 1; --k) {
            std::string next = k > 1 ? "uw|" + zw.substr(0, size_t(k - 1)) + "|" : "usweep";
            std::string cur = "uw|" + zw.substr(0, size_t(k)) + "|";
            std::string sym(1, zw[size_t(k - 1)]);
            if (!m.lookup(m.state_id(cur), m.symbol_id(sym), 0))
                m.add_rule(cur, sym, next, sym, Dir::L);
        }
    }

    if (!plans.empty()) {
        m.add_rule("usweep", "gX", "usweep", "gX", Dir::L);
        m.add_rule("usweep", "gA", "tvf", "gA", Dir::N);
        m.add_rule("usweep", "gR", "tvf", "gR", Dir::N);
    }
    for (const auto& a : tm::full_alphabet()) m.add_rule("tvf", a, "tv0", a, Dir::N);
    return m;
}

// ---------------------------------------------------------------------------
// Machines used on the computation tracks: the standalone counter and the
// dovetailed counter + verifier + post-processing pass, sharing one state set.
// ---------------------------------------------------------------------------

struct InstanceMachines {
    tm::TuringMachine mbc;     // counter over the shared state space
    tm::TuringMachine mcheck;  // T'(counter + toy verifier + post pass)
};

inline ToyTvParams toy_params_for(const OracleInstance& inst) {
    ToyTvParams prm;
    prm.scan_depth = 5;
    int wc = 0;
    auto consider = [&](const oracle::InputEntry& e) {
        wc = std::max(wc, e.m * (1 + inst.witness_bits_per_query));
    };
    for (const auto& [x, e] : inst.inputs) consider(e);
    if (inst.fallback) consider(*inst.fallback);
    prm.wit_cells = wc;
    // Keeps the tally write-out buildable; leaves needing a longer tally stay
    // undefined, which only matters for chain lengths no walk ever uses.
    prm.t_cap = 48;
    return prm;
}

inline InstanceMachines build_instance_machines(const OracleInstance& inst) {
    tm::TuringMachine mbc = tm::build_mbc();
    for (const auto& s : tm::full_alphabet())
        if (!mbc.has_symbol(s)) mbc = tm::add_symbols(mbc, s);

    tm::TuringMachine tv = build_toy_tv(inst, toy_params_for(inst));
    tm::TuringMachine mcheck =
        tm::transform_timewaste(tm::dovetail(tm::dovetail(mbc, tv), tm::build_mpost()),
                                {"sA", "sR", "sB"});

    std::vector<std::string> extra;
    for (const auto& s : mcheck.states())
        if (!mbc.has_state(s)) extra.push_back(s);
    tm::TuringMachine ext = tm::add_states(mbc, extra);
    require(ext.states() == mcheck.states(), "instance machines: state spaces diverged");
    require(ext.alphabet() == mcheck.alphabet(), "instance machines: alphabets diverged");
    return {std::move(ext), std::move(mcheck)};
}

// ---------------------------------------------------------------------------
// Block bookkeeping
// ---------------------------------------------------------------------------

enum class BlockClass { S1, S2, S3, S4 };

inline const char* block_class_name(BlockClass c) {
    switch (c) {
        case BlockClass::S1: return "S1";
        case BlockClass::S2: return "S2";
        case BlockClass::S3: return "S3";
        case BlockClass::S4: return "S4";
    }
    return "?";
}

struct BlockSpec {
    std::int64_t n = 0;
    std::int64_t timer = 0;
    bool v_init = true;       // tracks 4/5 start in the canonical initial configuration
    std::string witness;      // N-4 bits; y is the first m, u the next m*r
    std::string v_work;       // work tape for non-initial v (head at cell 1, start state)
};

// String on the counter tape once the increment in flight at step N-2 completes.
inline std::string chain_input_string(const InstanceMachines& ms, std::int64_t n) {
    require(n >= 4, "chain_input_string: N must be >= 4");
    tm::TapeConfig c = tm::make_config(ms.mbc, "1" + std::string(size_t(n - 3), '#'));
    tm::RunResult r = tm::run(ms.mbc, c, n - 2);
    tm::TapeConfig cur = r.config;
    int p0 = ms.mcheck.state_id("tv0");
    std::int64_t guard = 0;
    while (cur.state != p0) {
        tm::step(ms.mcheck, cur);
        require(++guard < 4 * n + 64, "chain_input_string: increment did not complete");
    }
    std::string z;
    for (int s : cur.work) {
        const std::string& sym = ms.mbc.alphabet()[size_t(s)];
        if (sym == "#") break;
        z += sym;
    }
    return z;
}

inline std::int64_t chain_input_value(const InstanceMachines& ms, std::int64_t n) {
    return detail::counter_value(chain_input_string(ms, n));
}

inline BlockClass classify_block(const OracleInstance& inst, const InstanceMachines& ms,
                                 const BlockSpec& b) {
    if (!b.v_init) return BlockClass::S1;
    std::int64_t x = chain_input_value(ms, b.n);
    int m = inst.query_count(x);
    require(static_cast<int>(b.witness.size()) >= m, "classify_block: witness too short");
    std::string y = b.witness.substr(0, size_t(m));
    if (cpp_int(b.timer) != oracle::t_of_xy(inst, x, y)) return BlockClass::S2;
    if (inst.y_rejected(x, y)) return BlockClass::S3;
    return BlockClass::S4;
}

struct BlockEnergy {
    BigFixed value;
    bool is_bound = false;  // true: certified lower bound, not the exact eigenvalue
    BlockClass cls = BlockClass::S1;
    bool accepting_u = false;
};

inline BlockEnergy block_ground_energy(const OracleInstance& inst, const InstanceMachines& ms,
                                       const BlockSpec& b, std::int64_t bits = 192) {
    BlockEnergy out;
    out.cls = classify_block(inst, ms, b);
    cpp_int p = clock_period(b.n);
    if (out.cls == BlockClass::S4) {
        std::int64_t x = chain_input_value(ms, b.n);
        int m = inst.query_count(x);
        int r = inst.witness_bits_per_query;
        std::string y = b.witness.substr(0, size_t(m));
        bool ok = true;
        std::string prefix;
        for (int i = 1; i <= m; ++i) {
            char yi = y[size_t(i - 1)];
            std::string q = inst.query(x, i, prefix);
            prefix += yi;
            if (yi == '1') {
                std::string u = b.witness.substr(size_t(m + (i - 1) * r), size_t(r));
                if (!inst.verifier_accepts(q, u)) ok = false;
            }
        }
        out.accepting_u = ok;
        if (ok) {
            out.value = spectral::cycle_two_halves_exact((2 * cpp_int(b.timer) + 1) * p, bits);
            out.is_bound = false;
            return out;
        }
    }
    out.value = spectral::periodic_lower_bound(p, bits);
    out.is_bound = true;
    return out;
}

// ---------------------------------------------------------------------------
// Full six-track walker
// ---------------------------------------------------------------------------

namespace comp {
constexpr int Blank = 0, Filled = 1;
inline int enc(int state, bool primed = false) { return 2 + 2 * state + (primed ? 1 : 0); }
inline bool is_head(int v) { return v >= 2; }
inline int state_of(int v) { return (v - 2) / 2; }
inline bool primed(int v) { return ((v - 2) & 1) != 0; }
}  // namespace comp

struct CompState {
    std::vector<int> t4, t5, t6;
    bool operator==(const CompState& o) const = default;
};

struct ChainState {
    clk::ClockConfig clock;
    CompState comp;
};

inline CompState initial_comp(const InstanceMachines& ms, std::int64_t n,
                              const std::string& witness, bool v_init = true,
                              const std::string& work_override = "") {
    CompState c;
    size_t cells = size_t(n - 2);
    c.t4.assign(cells, comp::Blank);
    c.t4[0] = comp::enc(ms.mbc.start());
    std::string work = v_init ? "1" + std::string(cells - 1, '#') : work_override;
    require(work.size() == cells, "initial_comp: work string length mismatch");
    for (size_t i = 0; i < cells; ++i)
        c.t5.push_back(ms.mbc.symbol_id(std::string(1, work[i])));
    c.t6.assign(cells, 0);
    require(witness.size() <= cells, "initial_comp: witness too long");
    for (size_t i = 0; i < witness.size(); ++i) c.t6[i] = witness[i] == '1' ? 1 : 0;
    return c;
}

inline tm::TapeConfig comp_to_tape(const CompState& c) {
    tm::TapeConfig t;
    t.work = c.t5;
    t.witness = c.t6;
    int heads = 0;
    for (size_t i = 0; i < c.t4.size(); ++i) {
        if (comp::is_head(c.t4[i])) {
            require(!comp::primed(c.t4[i]), "comp_to_tape: pending left move");
            t.head = static_cast<int>(i) + 1;
            t.state = comp::state_of(c.t4[i]);
            ++heads;
        }
    }
    require(heads == 1, "comp_to_tape: expected exactly one head");
    return t;
}

inline CompState tape_to_comp(const tm::TapeConfig& t) {
    CompState c;
    c.t5 = t.work;
    c.t6 = t.witness;
    c.t4.assign(t.work.size(), comp::Blank);
    for (int i = 0; i + 1 < t.head; ++i) c.t4[size_t(i)] = comp::Filled;
    c.t4[size_t(t.head - 1)] = comp::enc(t.state);
    return c;
}

// One-pair propagation operator induced by a machine's transition table.
class PairOps {
public:
    explicit PairOps(const tm::TuringMachine& m) : m_(&m), entry_(m.entry_dirs()) {
        for (const tm::Rule& r : m.rules()) {
            auto k = std::tuple<int, int, int>{r.next, r.write, r.wit};
            auto [it, fresh] = inv_.insert({k, r});
            if (!fresh) ambiguous_.insert(k);
        }
    }

    void forward(CompState& c, int i) const {
        int a = c.t4[size_t(i)], b = c.t4[size_t(i + 1)];
        if (comp::is_head(a) && !comp::primed(a) && b == comp::Blank) {
            const tm::Rule* r = m_->lookup(comp::state_of(a), c.t5[size_t(i)], c.t6[size_t(i)]);
            require(r != nullptr, "walk: undefined machine transition");
            c.t5[size_t(i)] = r->write;
            switch (r->dir) {
                case tm::Dir::R:
                    c.t4[size_t(i)] = comp::Filled;
                    c.t4[size_t(i + 1)] = comp::enc(r->next);
                    break;
                case tm::Dir::N: c.t4[size_t(i)] = comp::enc(r->next); break;
                case tm::Dir::L: c.t4[size_t(i)] = comp::enc(r->next, true); break;
            }
            return;
        }
        if (a == comp::Filled && comp::is_head(b) && comp::primed(b)) {
            c.t4[size_t(i)] = comp::enc(comp::state_of(b));
            c.t4[size_t(i + 1)] = comp::Blank;
            return;
        }
        if (a == comp::Filled && comp::is_head(b) && !comp::primed(b)) {
            require(entry_[size_t(comp::state_of(b))] != tm::Dir::R,
                    "walk: fresh right-moving head in the sweep path");
            return;
        }
        if ((a == comp::Blank && b == comp::Blank) || (a == comp::Filled && b == comp::Filled))
            return;
        throw error("walk: pair outside the forward domain");
    }

    void backward(CompState& c, int i) const {
        int a = c.t4[size_t(i)], b = c.t4[size_t(i + 1)];
        if (a == comp::Filled && comp::is_head(b) && !comp::primed(b)) {
            if (entry_[size_t(comp::state_of(b))] != tm::Dir::R) return;  // inverse identity
            const tm::Rule* r = lookup_inverse(comp::state_of(b), c.t5[size_t(i)], c.t6[size_t(i)]);
            c.t4[size_t(i)] = comp::enc(r->state);
            c.t4[size_t(i + 1)] = comp::Blank;
            c.t5[size_t(i)] = r->read;
            return;
        }
        if (comp::is_head(a) && b == comp::Blank) {
            int q = comp::state_of(a);
            if (comp::primed(a) || entry_[size_t(q)] == tm::Dir::N) {
                const tm::Rule* r = lookup_inverse(q, c.t5[size_t(i)], c.t6[size_t(i)]);
                c.t4[size_t(i)] = comp::enc(r->state);
                c.t5[size_t(i)] = r->read;
                return;
            }
            if (entry_[size_t(q)] == tm::Dir::L) {
                c.t4[size_t(i)] = comp::Filled;
                c.t4[size_t(i + 1)] = comp::enc(q, true);
                return;
            }
            throw error("walk: pair outside the backward domain");
        }
        if ((a == comp::Blank && b == comp::Blank) || (a == comp::Filled && b == comp::Filled))
            return;
        throw error("walk: pair outside the backward domain");
    }

private:
    const tm::TuringMachine* m_;
    std::vector<tm::Dir> entry_;
    std::map<std::tuple<int, int, int>, tm::Rule> inv_;
    std::set<std::tuple<int, int, int>> ambiguous_;

    const tm::Rule* lookup_inverse(int next, int write, int wit) const {
        auto k = std::tuple<int, int, int>{next, write, wit};
        require(!ambiguous_.count(k), "walk: ambiguous inverse transition");
        auto it = inv_.find(k);
        require(it != inv_.end(), "walk: missing inverse transition");
        return &it->second;
    }
};

class TrackWalker {
public:
    TrackWalker(const OracleInstance& inst, const InstanceMachines& ms)
        : bc_(ms.mbc), check_(ms.mcheck) {
        (void)inst;
    }

    // Advance one clock step; applies the paired computation action when the
    // firing rule carries one. Throws on illegal or stuck clock configurations.
    void step(ChainState& s) const {
        clk::StepResult r = clk::step_forward(s.clock);
        require(r.kind == clk::StepKind::Next, "walk: clock left the legal cycle");
        if (r.match.rule->anchor == clk::Anchor::Pair) {
            switch (r.match.rule->action) {
                case clk::CompAction::None: break;
                case clk::CompAction::BC: bc_.forward(s.comp, r.match.pos); break;
                case clk::CompAction::BCInv: bc_.backward(s.comp, r.match.pos); break;
                case clk::CompAction::Check: check_.forward(s.comp, r.match.pos); break;
                case clk::CompAction::CheckInv: check_.backward(s.comp, r.match.pos); break;
            }
        }
        s.clock = std::move(r.next);
    }

private:
    PairOps bc_;
    PairOps check_;
};

// ---------------------------------------------------------------------------
// Penalty profiles
// ---------------------------------------------------------------------------

// weight in half units at each clock time of the (2T+1)p(N) cycle
using PenaltyProfile = std::map<std::int64_t, int>;

namespace detail {

struct SymbolIds {
    int one, hash, sA, sR, q0_enc;
    std::set<int> sigma;  // symbols counted by the timer-length check

    SymbolIds(const tm::TuringMachine& m, int q0_state) {
        one = m.symbol_id("1");
        hash = m.symbol_id("#");
        sA = m.symbol_id("sA");
        sR = m.symbol_id("sR");
        q0_enc = comp::enc(q0_state);
        for (const char* s : {"gA", "gR", "gB", "sA", "sR", "sB", "sX"})
            sigma.insert(m.symbol_id(s));
    }
};

// Half units charged by the diagonal terms on one six-track configuration.
inline int penalty_half_units(const clk::ClockConfig& ck, const CompState& cp,
                              const SymbolIds& ids) {
    int n = ck.cells();
    int w = 0;
    for (int j = 0; j < n; ++j) {
        std::uint8_t v = ck.track1[size_t(j)];
        if (!clk::t1::is_ptr(v)) continue;
        int fam = clk::t1::family(v);
        bool right = clk::t1::right(v);
        if (fam == 8 && !right) {
            if (j >= 1) {
                if (cp.t5[size_t(j)] != ids.hash) w += 2;
            } else {
                if (cp.t5[0] != ids.one)
                    w += 2;
                else if (cp.t4[0] != ids.q0_enc)
                    w += 2;
            }
        }
        if (fam == 4 && !right) {
            bool in_timer = ck.track3[size_t(j)] != clk::t23::Dead;
            bool in_sigma = ids.sigma.count(cp.t5[size_t(j)]) > 0;
            if (in_timer != in_sigma) w += 2;
            if (j == 0) {
                if (cp.t5[0] == ids.sR) w += 2;
                if (ck.track2[0] == clk::t23::R && ck.track3[0] == clk::t23::R &&
                    (cp.t5[0] == ids.sA || cp.t5[0] == ids.sR))
                    w += 1;
            }
        }
        if (fam == 5 && right && j == 0) {
            if (ck.track2[0] == clk::t23::R && ck.track3[0] == clk::t23::R &&
                (cp.t5[0] == ids.sA || cp.t5[0] == ids.sR))
                w += 1;
        }
    }
    return w;
}

}  // namespace detail

enum class ProfileMode { Semantic, TrackWalk };

// Penalty hit times over one full cycle. Semantic mode pairs the clock walk
// with direct tape simulations; track-walk mode evolves all six tracks.
inline PenaltyProfile penalty_profile(const OracleInstance& inst, const InstanceMachines& ms,
                                      const BlockSpec& b, ProfileMode mode) {
    std::int64_t n = b.n;
    std::int64_t cycle = (2 * b.timer + 1) * clock_period_i64(n);
    detail::SymbolIds ids(ms.mbc, ms.mbc.start());

    CompState v = initial_comp(ms, n, b.witness, b.v_init, b.v_work);
    PenaltyProfile prof;

    if (mode == ProfileMode::TrackWalk) {
        ChainState s{clk::time_zero(static_cast<int>(n), static_cast<int>(b.timer)), v};
        TrackWalker walker(inst, ms);
        for (std::int64_t t = 0; t < cycle; ++t) {
            int w = detail::penalty_half_units(s.clock, s.comp, ids);
            if (w) prof[t] = w;
            walker.step(s);
        }
        return prof;
    }

    // semantic: simulate the two tape phases once, then read the clock schedule
    tm::TapeConfig start = comp_to_tape(v);
    tm::RunResult bcrun = tm::run(ms.mbc, start, n - 2);
    tm::RunResult checkrun = tm::run(ms.mcheck, bcrun.config, n - 2);
    CompState final_state = tape_to_comp(checkrun.config);

    clk::ClockConfig ck = clk::time_zero(static_cast<int>(n), static_cast<int>(b.timer));
    for (std::int64_t t = 0; t < cycle; ++t) {
        int pc = clk::pointer_cell_t1(ck);
        int fam = clk::t1::family(ck.track1[size_t(pc)]);
        const CompState& cp = (fam == 4 || fam == 5) ? final_state : v;
        int w = detail::penalty_half_units(ck, cp, ids);
        if (w) prof[t] = w;
        clk::StepResult r = clk::step_forward(ck);
        require(r.kind == clk::StepKind::Next, "semantic profile: clock stalled");
        ck = std::move(r.next);
    }
    return prof;
}

// ---------------------------------------------------------------------------
// Cyclicity and global minimization
// ---------------------------------------------------------------------------

struct CycleCheckResult {
    bool ok = false;
    std::string reason;
};

// Walk p(N) steps from several offsets; the computation tracks must return.
inline CycleCheckResult track_walk_cycle_check(const OracleInstance& inst,
                                               const InstanceMachines& ms, std::int64_t n,
                                               std::int64_t timer, const std::string& witness,
                                               int offsets = 4) {
    CycleCheckResult res;
    std::int64_t p = clock_period_i64(n);
    std::int64_t cycle = (2 * timer + 1) * p;
    try {
        ChainState s{clk::time_zero(static_cast<int>(n), static_cast<int>(timer)),
                     initial_comp(ms, n, witness)};
        TrackWalker walker(inst, ms);
        ChainState orig = s;

        std::set<std::int64_t> marks;
        for (int k = 0; k < offsets; ++k) marks.insert(k * std::max<std::int64_t>(1, p / offsets));
        std::map<std::int64_t, CompState> snap;
        for (std::int64_t t = 0; t < cycle; ++t) {
            std::int64_t phase = t % p;
            if (marks.count(phase)) {
                auto it = snap.find(phase);
                if (it == snap.end()) {
                    snap[phase] = s.comp;
                } else if (!(it->second == s.comp)) {
                    res.reason =
                        "computation tracks failed to return at offset " + std::to_string(phase);
                    return res;
                }
            }
            walker.step(s);
        }
        if (!(s.comp == orig.comp) || !(s.clock == orig.clock)) {
            res.reason = "full cycle did not return to the start";
            return res;
        }
        res.ok = true;
        return res;
    } catch (const error& e) {
        res.reason = e.what();
        return res;
    }
}

struct YReport {
    std::string y;
    BlockClass cls = BlockClass::S1;
    cpp_int timer;       // T(x,y)
    bool timer_fits = false;
    BigFixed energy;     // exact value or bound
    bool is_bound = true;
};

struct GlobalResult {
    std::int64_t n = 0;
    std::int64_t x = 0;            // input encoded by the chain
    std::string correct_y;
    bool found_s4 = false;
    BigFixed energy;               // smallest exact block value
    BlockSpec argmin;
    bool argmin_is_correct_y = false;
    bool strict_order = false;     // every other y block certifiably above
    bool bounds_dominate = false;  // periodic bound above the ground value
    std::vector<YReport> per_y;
};

inline GlobalResult global_ground_energy(const OracleInstance& inst, const InstanceMachines& ms,
                                         std::int64_t n, std::int64_t bits = 192) {
    GlobalResult res;
    res.n = n;
    res.x = chain_input_value(ms, n);
    int m = inst.query_count(res.x);
    int r = inst.witness_bits_per_query;
    require(m <= 16, "global_ground_energy: query budget exceeded");
    res.correct_y = inst.correct_answers(res.x);
    cpp_int p = clock_period(n);

    std::optional<BigFixed> best;
    for (std::int64_t ybits = 0; ybits < (std::int64_t(1) << m); ++ybits) {
        std::string y;
        for (int i = 0; i < m; ++i) y += ((ybits >> i) & 1) ? '1' : '0';
        YReport rep;
        rep.y = y;
        rep.timer = oracle::t_of_xy(inst, res.x, y);
        rep.timer_fits = rep.timer <= n - 3;
        bool rejected = inst.y_rejected(res.x, y);
        std::optional<std::string> u = inst.find_accepting_segments(res.x, y);
        if (!rep.timer_fits) {
            // no block carries this timer; the matching-timer blocks do not exist
            rep.cls = BlockClass::S2;
            rep.energy = spectral::periodic_lower_bound(p, bits);
            rep.is_bound = true;
        } else if (rejected || !u) {
            rep.cls = BlockClass::S3;
            rep.energy = spectral::periodic_lower_bound(p, bits);
            rep.is_bound = true;
        } else {
            rep.cls = BlockClass::S4;
            rep.energy = spectral::cycle_two_halves_exact((2 * rep.timer + 1) * p, bits);
            rep.is_bound = false;
            std::string w = y + *u;
            w.resize(size_t(n - 4), '0');
            if (!best || certified_less(rep.energy, *best)) {
                best = rep.energy;
                res.argmin = BlockSpec{n, rep.timer.convert_to<std::int64_t>(), true, w};
                res.argmin_is_correct_y = (y == res.correct_y);
            }
        }
        res.per_y.push_back(rep);
    }
    res.found_s4 = best.has_value();
    if (res.found_s4) {
        res.energy = *best;
        res.strict_order = true;
        for (const YReport& rep : res.per_y) {
            if (rep.y == res.correct_y) continue;
            if (!rep.is_bound && !certified_less(res.energy, rep.energy)) res.strict_order = false;
        }
        res.bounds_dominate =
            certified_less(res.energy, spectral::periodic_lower_bound(p, bits));
    }
    return res;
}

// Exhaustive witness enumeration; feasible for small chains, used to
// cross-validate the structured search.
inline GlobalResult global_ground_energy_exhaustive(const OracleInstance& inst,
                                                    const InstanceMachines& ms, std::int64_t n,
                                                    std::int64_t bits = 192) {
    require(n - 4 <= 20, "exhaustive enumeration budget exceeded");
    GlobalResult res = global_ground_energy(inst, ms, n, bits);

    std::optional<BigFixed> best;
    BlockSpec arg;
    for (std::int64_t t = 0; t <= n - 3; ++t) {
        for (std::int64_t wb = 0; wb < (std::int64_t(1) << (n - 4)); ++wb) {
            std::string w;
            for (std::int64_t i = 0; i < n - 4; ++i) w += ((wb >> i) & 1) ? '1' : '0';
            BlockSpec b{n, t, true, w};
            BlockEnergy e = block_ground_energy(inst, ms, b, bits);
            if (!e.is_bound && (!best || certified_less(e.value, *best))) {
                best = e.value;
                arg = b;
            }
        }
    }
    require(res.found_s4 == best.has_value(), "exhaustive and structured searches disagree");
    if (best) {
        require(cmp(*best, res.energy) == 0, "exhaustive and structured minima differ");
        res.argmin = arg;
    }
    return res;
}

}  // namespace tihsim::blocks
