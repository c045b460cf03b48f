#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tihsim/common.hpp"

namespace tihsim::clk {

// Track 1: filled blanks left of the pointer, blanks right, one tagged pointer.
namespace t1 {
constexpr std::uint8_t Filled = 0, Blank = 1;
inline std::uint8_t ptr(int family, bool right) {
    return static_cast<std::uint8_t>(2 + (family - 1) * 2 + (right ? 1 : 0));
}
inline bool is_ptr(std::uint8_t v) { return v >= 2; }
inline int family(std::uint8_t v) { return (v - 2) / 2 + 1; }
inline bool right(std::uint8_t v) { return ((v - 2) & 1) != 0; }
}  // namespace t1

// Tracks 2 and 3 share the pointer encoding; track 3 adds the dead cell.
namespace t23 {
constexpr std::uint8_t Filled = 0, Blank = 1, L = 2, R = 3, Dead = 4;
inline bool is_ptr(std::uint8_t v) { return v == L || v == R; }
}  // namespace t23

struct ClockConfig {
    std::vector<std::uint8_t> track1, track2, track3;

    bool operator==(const ClockConfig& o) const = default;
    int cells() const { return static_cast<int>(track1.size()); }

    std::string key() const {
        std::string k;
        k.reserve(track1.size() * 3);
        for (auto v : track1) k += static_cast<char>('A' + v);
        for (auto v : track2) k += static_cast<char>('a' + v);
        for (auto v : track3) k += static_cast<char>('0' + v);
        return k;
    }
};

inline bool well_formed(const ClockConfig& c) {
    size_t n = c.track1.size();
    if (n == 0 || c.track2.size() != n || c.track3.size() != n) return false;

    int ptrs = 0;
    int phase = 0;  // 0 filled, 1 blank
    for (auto v : c.track1) {
        if (t1::is_ptr(v)) {
            if (++ptrs > 1) return false;
            if (phase != 0) return false;
            phase = 1;
        } else if (v == t1::Filled) {
            if (phase != 0) return false;
        } else if (phase == 0) {
            phase = 1;
        }
    }
    if (ptrs != 1) return false;

    ptrs = 0;
    phase = 0;
    for (auto v : c.track2) {
        if (t23::is_ptr(v)) {
            if (++ptrs > 1 || phase != 0) return false;
            phase = 1;
        } else if (v == t23::Filled) {
            if (phase != 0) return false;
        } else if (v == t23::Blank) {
            if (phase == 0) phase = 1;
        } else {
            return false;  // no dead cells on track 2
        }
    }
    if (ptrs != 1) return false;

    ptrs = 0;
    phase = 0;  // 0 filled, 1 blank, 2 dead
    for (auto v : c.track3) {
        if (t23::is_ptr(v)) {
            if (++ptrs > 1 || phase != 0) return false;
            phase = 1;
        } else if (v == t23::Filled) {
            if (phase != 0) return false;
        } else if (v == t23::Blank) {
            if (phase == 2) return false;
            if (phase == 0) return false;  // blanks only after the pointer
            phase = 1;
        } else {  // dead
            if (phase == 0) return false;
            phase = 2;
        }
    }
    return ptrs == 1;
}

inline int pointer_cell_t1(const ClockConfig& c) {
    for (size_t i = 0; i < c.track1.size(); ++i)
        if (t1::is_ptr(c.track1[i])) return static_cast<int>(i);
    throw error("no track-1 pointer");
}

inline int pointer_cell(const std::vector<std::uint8_t>& track) {
    for (size_t i = 0; i < track.size(); ++i)
        if (t23::is_ptr(track[i])) return static_cast<int>(i);
    throw error("no pointer on track");
}

// Timer length: number of non-dead, non-pointer cells on track 3.
inline int timer_length(const ClockConfig& c) {
    int t = 0;
    for (auto v : c.track3)
        if (v == t23::Filled || v == t23::Blank) ++t;
    return t;
}

inline ClockConfig time_zero(int n, int timer) {
    require(n >= 4, "time_zero: N must be >= 4");
    require(timer >= 0 && timer <= n - 3, "time_zero: timer out of range");
    int cells = n - 2;
    ClockConfig c;
    c.track1.assign(size_t(cells), t1::Blank);
    c.track1[0] = t1::ptr(1, true);
    c.track2.assign(size_t(cells), t23::Blank);
    c.track2[0] = t23::R;
    c.track3.assign(size_t(cells), t23::Dead);
    c.track3[0] = t23::R;
    for (int i = 1; i <= timer; ++i) c.track3[size_t(i)] = t23::Blank;
    return c;
}

// --- transition rule table ---------------------------------------------------

enum class CompAction : std::uint8_t { None, BC, BCInv, Check, CheckInv };

enum class Anchor : std::uint8_t { Pair, LeftEnd, RightEnd };

struct Pat {
    enum Kind : std::uint8_t { Any, Eq, Ne } kind = Any;
    std::uint8_t v = 0;

    bool matches(std::uint8_t x) const {
        switch (kind) {
            case Any: return true;
            case Eq: return x == v;
            case Ne: return x != v;
        }
        return false;
    }
};
inline Pat any() { return {}; }
inline Pat eq(std::uint8_t v) { return {Pat::Eq, v}; }
inline Pat ne(std::uint8_t v) { return {Pat::Ne, v}; }

struct Repl {
    bool set = false;
    std::uint8_t v = 0;
};
inline Repl keep() { return {}; }
inline Repl to(std::uint8_t v) { return {true, v}; }

struct ClockRule {
    std::string name;        // unique internal id
    std::string paper_name;  // label used in the source material (duplicated there for 5..8)
    Anchor anchor = Anchor::Pair;
    int width = 2;  // 2 for pair rules, 1 for end rules
    Pat p1[2], p2[2], p3[2];
    Repl r1[2], r2[2], r3[2];
    CompAction action = CompAction::None;
    int family = 0;

    bool matches_at(const ClockConfig& c, int pos) const {
        for (int k = 0; k < width; ++k) {
            size_t i = size_t(pos + k);
            if (!p1[k].matches(c.track1[i]) || !p2[k].matches(c.track2[i]) ||
                !p3[k].matches(c.track3[i]))
                return false;
        }
        return true;
    }

    void apply(ClockConfig& c, int pos) const {
        for (int k = 0; k < width; ++k) {
            size_t i = size_t(pos + k);
            if (r1[k].set) c.track1[i] = r1[k].v;
            if (r2[k].set) c.track2[i] = r2[k].v;
            if (r3[k].set) c.track3[i] = r3[k].v;
        }
    }
};

namespace detail {

inline ClockRule pair_rule(std::string name, std::string paper, int family) {
    ClockRule r;
    r.name = std::move(name);
    r.paper_name = std::move(paper);
    r.anchor = Anchor::Pair;
    r.width = 2;
    r.family = family;
    return r;
}

inline ClockRule end_rule(std::string name, std::string paper, Anchor a, int family) {
    ClockRule r;
    r.name = std::move(name);
    r.paper_name = std::move(paper);
    r.anchor = a;
    r.width = 1;
    r.family = family;
    return r;
}

inline void add_family_15(std::vector<ClockRule>& out, int i, int paper_base,
                          CompAction left_action, CompAction right_action) {
    std::string fi = std::to_string(i);
    std::uint8_t Li = t1::ptr(i, false), Ri = t1::ptr(i, true);

    ClockRule r = pair_rule("TR" + fi + ".left", "TR-" + std::to_string(paper_base), i);
    r.p1[0] = eq(t1::Filled), r.p1[1] = eq(Li);
    r.p2[0] = ne(t23::R), r.p2[1] = ne(t23::R);
    r.r1[0] = to(Li), r.r1[1] = to(t1::Blank);
    r.action = left_action;
    out.push_back(r);

    r = pair_rule("TR" + fi + ".leftpass", "TR-" + std::to_string(paper_base + 1), i);
    r.p1[0] = eq(t1::Filled), r.p1[1] = eq(Li);
    r.p2[0] = eq(t23::R), r.p2[1] = eq(t23::Blank);
    r.r1[0] = to(Li), r.r1[1] = to(t1::Blank);
    r.r2[0] = to(t23::Filled), r.r2[1] = to(t23::R);
    r.action = left_action;
    out.push_back(r);

    r = pair_rule("TR" + fi + ".right", "TR-" + std::to_string(paper_base + 2), i);
    r.p1[0] = eq(Ri), r.p1[1] = eq(t1::Blank);
    r.p2[0] = ne(t23::L);
    r.r1[0] = to(t1::Filled), r.r1[1] = to(Ri);
    r.action = right_action;
    out.push_back(r);

    r = end_rule("TR" + fi + ".flipR", "TR-" + std::to_string(paper_base + 3), Anchor::RightEnd, i);
    r.p1[0] = eq(Ri);
    r.p2[0] = ne(t23::R);  // generic: neither pointer
    r.r1[0] = to(Li);
    // also exclude L below by a second pattern restriction
    out.push_back(r);
    // encode "neither R nor L" by splitting into filled/blank cases
    out.back().p2[0] = eq(t23::Filled);
    r = out.back();
    r.name += "b";
    r.p2[0] = eq(t23::Blank);
    out.push_back(r);

    r = end_rule("TR" + fi + ".flipL", "TR-" + std::to_string(paper_base + 4), Anchor::LeftEnd, i);
    r.p1[0] = eq(Li);
    r.r1[0] = to(Ri);
    out.push_back(r);

    r = end_rule("TR" + fi + ".adv", "TR-" + std::to_string(i == 1 ? 6 : 26), Anchor::RightEnd, i);
    r.p1[0] = eq(Ri);
    r.p2[0] = eq(t23::R);
    r.r1[0] = to(t1::ptr(i + 1, false));
    r.r2[0] = to(t23::L);
    out.push_back(r);
}

inline void add_family_26(std::vector<ClockRule>& out, int i, CompAction left_action,
                          CompAction right_action) {
    std::string fi = std::to_string(i);
    std::uint8_t Li = t1::ptr(i, false), Ri = t1::ptr(i, true);
    std::string base = i == 2 ? "TR-7" : "TR-7 (6-copy)";

    ClockRule r = pair_rule("TR" + fi + ".left", i == 2 ? "TR-7" : "TR-7'", i);
    r.p1[0] = eq(t1::Filled), r.p1[1] = eq(Li);
    r.r1[0] = to(Li), r.r1[1] = to(t1::Blank);
    r.action = left_action;
    out.push_back(r);

    r = end_rule("TR" + fi + ".flipL", i == 2 ? "TR-8" : "TR-8'", Anchor::LeftEnd, i);
    r.p1[0] = eq(Li);
    r.r1[0] = to(Ri);
    out.push_back(r);

    r = pair_rule("TR" + fi + ".right", i == 2 ? "TR-9" : "TR-9'", i);
    r.p1[0] = eq(Ri), r.p1[1] = eq(t1::Blank);
    r.r1[0] = to(t1::Filled), r.r1[1] = to(Ri);
    r.action = right_action;
    out.push_back(r);

    r = end_rule("TR" + fi + ".adv", i == 2 ? "TR-10" : "TR-27", Anchor::RightEnd, i);
    r.p1[0] = eq(Ri);
    r.p2[0] = eq(t23::L);
    r.r1[0] = to(t1::ptr(i + 1, false));
    out.push_back(r);
}

inline void add_family_37(std::vector<ClockRule>& out, int i, int paper_base,
                          CompAction left_action, CompAction right_action) {
    std::string fi = std::to_string(i);
    std::uint8_t Li = t1::ptr(i, false), Ri = t1::ptr(i, true);

    ClockRule r = pair_rule("TR" + fi + ".right", "TR-" + std::to_string(paper_base), i);
    r.p1[0] = eq(Ri), r.p1[1] = eq(t1::Blank);
    r.p2[0] = ne(t23::L), r.p2[1] = ne(t23::L);
    r.r1[0] = to(t1::Filled), r.r1[1] = to(Ri);
    r.action = right_action;
    out.push_back(r);

    r = pair_rule("TR" + fi + ".rightpass", "TR-" + std::to_string(paper_base + 1), i);
    r.p1[0] = eq(Ri), r.p1[1] = eq(t1::Blank);
    r.p2[0] = eq(t23::Filled), r.p2[1] = eq(t23::L);
    r.r1[0] = to(t1::Filled), r.r1[1] = to(Ri);
    r.r2[0] = to(t23::L), r.r2[1] = to(t23::Blank);
    r.action = right_action;
    out.push_back(r);

    r = pair_rule("TR" + fi + ".left", "TR-" + std::to_string(paper_base + 2), i);
    r.p1[0] = eq(t1::Filled), r.p1[1] = eq(Li);
    r.p2[1] = ne(t23::R);
    r.r1[0] = to(Li), r.r1[1] = to(t1::Blank);
    r.action = left_action;
    out.push_back(r);

    r = end_rule("TR" + fi + ".flipL", "TR-" + std::to_string(paper_base + 3), Anchor::LeftEnd, i);
    r.p1[0] = eq(Li);
    r.p2[0] = eq(t23::Filled);
    r.r1[0] = to(Ri);
    out.push_back(r);
    r.name += "b";
    r.p2[0] = eq(t23::Blank);
    out.push_back(r);

    r = end_rule("TR" + fi + ".flipR", "TR-" + std::to_string(paper_base + 4), Anchor::RightEnd, i);
    r.p1[0] = eq(Ri);
    r.r1[0] = to(Li);
    out.push_back(r);

    r = end_rule("TR" + fi + ".adv", "TR-" + std::to_string(i == 3 ? 16 : 36), Anchor::LeftEnd, i);
    r.p1[0] = eq(Li);
    r.p2[0] = eq(t23::L);
    r.r1[0] = to(t1::ptr(i + 1, true));
    r.r2[0] = to(t23::R);
    out.push_back(r);
}

inline void add_family_4(std::vector<ClockRule>& out) {
    std::uint8_t L4 = t1::ptr(4, false), R4 = t1::ptr(4, true);

    ClockRule r = pair_rule("TR4.right", "TR-17", 4);
    r.p1[0] = eq(R4), r.p1[1] = eq(t1::Blank);
    r.r1[0] = to(t1::Filled), r.r1[1] = to(R4);
    out.push_back(r);

    r = end_rule("TR4.flipR", "TR-18", Anchor::RightEnd, 4);
    r.p1[0] = eq(R4);
    r.r1[0] = to(L4);
    out.push_back(r);

    r = pair_rule("TR4.left", "TR-19", 4);
    r.p1[0] = eq(t1::Filled), r.p1[1] = eq(L4);
    r.r1[0] = to(L4), r.r1[1] = to(t1::Blank);
    out.push_back(r);

    r = end_rule("TR4.adv", "TR-20", Anchor::LeftEnd, 4);
    r.p1[0] = eq(L4);
    r.p2[0] = eq(t23::R);
    r.r1[0] = to(t1::ptr(5, true));
    out.push_back(r);
}

inline void add_family_8(std::vector<ClockRule>& out) {
    std::uint8_t L8 = t1::ptr(8, false), R8 = t1::ptr(8, true);

    ClockRule r = pair_rule("TR8.advtimerR", "TR-37", 8);
    r.p1[0] = eq(t1::Filled), r.p1[1] = eq(L8);
    r.p3[0] = eq(t23::R), r.p3[1] = eq(t23::Blank);
    r.r1[0] = to(L8), r.r1[1] = to(t1::Blank);
    r.r3[0] = to(t23::Filled), r.r3[1] = to(t23::R);
    out.push_back(r);

    r = pair_rule("TR8.advtimerL", "TR-38", 8);
    r.p1[0] = eq(R8), r.p1[1] = eq(t1::Blank);
    r.p3[0] = eq(t23::Filled), r.p3[1] = eq(t23::L);
    r.r1[0] = to(t1::Filled), r.r1[1] = to(R8);
    r.r3[0] = to(t23::L), r.r3[1] = to(t23::Blank);
    out.push_back(r);

    r = pair_rule("TR8.turntimer", "TR-39", 8);
    r.p1[0] = eq(R8), r.p1[1] = eq(t1::Blank);
    r.p3[0] = eq(t23::R), r.p3[1] = eq(t23::Dead);
    r.r1[0] = to(t1::Filled), r.r1[1] = to(R8);
    r.r3[0] = to(t23::L);
    out.push_back(r);

    r = end_rule("TR8.flipRtimer", "TR-40", Anchor::RightEnd, 8);
    r.p1[0] = eq(R8);
    r.p3[0] = eq(t23::R);
    r.r1[0] = to(L8);
    r.r3[0] = to(t23::L);
    out.push_back(r);

    r = end_rule("TR8.advturn", "TR-41", Anchor::LeftEnd, 8);
    r.p1[0] = eq(L8);
    r.p2[0] = eq(t23::R);
    r.p3[0] = eq(t23::L);
    r.r1[0] = to(t1::ptr(1, true));
    r.r3[0] = to(t23::R);
    out.push_back(r);

    // The right-moving pointer passes over timer material it does not act on.
    const std::pair<std::uint8_t, std::uint8_t> passable[] = {
        {t23::Blank, t23::Dead}, {t23::Blank, t23::Blank}, {t23::Filled, t23::Filled},
        {t23::R, t23::Blank},    {t23::Filled, t23::R},    {t23::Dead, t23::Dead}};
    char suffix = 'a';
    for (auto [x, y] : passable) {
        r = pair_rule(std::string("TR8.right") + suffix, "TR-42", 8);
        r.p1[0] = eq(R8), r.p1[1] = eq(t1::Blank);
        r.p3[0] = eq(x), r.p3[1] = eq(y);
        r.r1[0] = to(t1::Filled), r.r1[1] = to(R8);
        out.push_back(r);
        ++suffix;
    }

    r = pair_rule("TR8.left", "TR-43", 8);
    r.p1[0] = eq(t1::Filled), r.p1[1] = eq(L8);
    r.p3[0] = ne(t23::R), r.p3[1] = ne(t23::R);
    r.r1[0] = to(L8), r.r1[1] = to(t1::Blank);
    out.push_back(r);

    r = end_rule("TR8.flipRblank", "TR-44", Anchor::RightEnd, 8);
    r.p1[0] = eq(R8);
    r.p3[0] = eq(t23::Blank);
    r.r1[0] = to(L8);
    out.push_back(r);

    r = end_rule("TR8.flipRdead", "TR-45", Anchor::RightEnd, 8);
    r.p1[0] = eq(R8);
    r.p3[0] = eq(t23::Dead);
    r.r1[0] = to(L8);
    out.push_back(r);

    r = end_rule("TR8.adv", "TR-46", Anchor::LeftEnd, 8);
    r.p1[0] = eq(L8);
    r.p2[0] = eq(t23::R);
    r.p3[0] = eq(t23::Filled);
    r.r1[0] = to(t1::ptr(1, true));
    out.push_back(r);
}

}  // namespace detail

// Full table. Families 5..8 duplicate 1..4; the propagation actions attached here
// are the ones the computation walker executes when a rule fires on a pair.
inline const std::vector<ClockRule>& clock_rules() {
    static const std::vector<ClockRule> rules = [] {
        std::vector<ClockRule> out;
        detail::add_family_15(out, 1, 1, CompAction::BC, CompAction::None);
        detail::add_family_26(out, 2, CompAction::BC, CompAction::None);
        detail::add_family_37(out, 3, 11, CompAction::Check, CompAction::None);
        detail::add_family_4(out);
        detail::add_family_15(out, 5, 21, CompAction::None, CompAction::CheckInv);
        detail::add_family_26(out, 6, CompAction::None, CompAction::BCInv);
        detail::add_family_37(out, 7, 31, CompAction::None, CompAction::BCInv);
        detail::add_family_8(out);
        return out;
    }();
    return rules;
}

// --- illegal local patterns ---------------------------------------------------

struct IllegalPat {
    std::string name;
    Anchor anchor = Anchor::Pair;  // Pair here means "any single cell" unless width 2
    int width = 1;
    bool any_cell = true;  // single-cell patterns that may sit anywhere
    Pat p1[2], p2[2], p3[2];

    bool matches_at(const ClockConfig& c, int pos) const {
        for (int k = 0; k < width; ++k) {
            size_t i = size_t(pos + k);
            if (!p1[k].matches(c.track1[i]) || !p2[k].matches(c.track2[i]) ||
                !p3[k].matches(c.track3[i]))
                return false;
        }
        return true;
    }
};

inline const std::vector<IllegalPat>& illegal_patterns() {
    static const std::vector<IllegalPat> pats = [] {
        std::vector<IllegalPat> out;
        auto vertical = [&out](std::string name, std::uint8_t p1v, int track, std::uint8_t v) {
            IllegalPat p;
            p.name = std::move(name);
            p.any_cell = true;
            p.width = 1;
            p.p1[0] = eq(p1v);
            if (track == 2)
                p.p2[0] = eq(v);
            else
                p.p3[0] = eq(v);
            out.push_back(p);
        };
        // opposite-direction pointer alignment for the sweeping families
        for (int i : {1, 5}) {
            vertical("hcl1." + std::to_string(i) + "a", t1::ptr(i, true), 2, t23::L);
            vertical("hcl1." + std::to_string(i) + "b", t1::ptr(i, false), 2, t23::R);
        }
        for (int i : {3, 7}) {
            vertical("hcl3." + std::to_string(i) + "a", t1::ptr(i, false), 2, t23::R);
            vertical("hcl3." + std::to_string(i) + "b", t1::ptr(i, true), 2, t23::L);
        }
        vertical("hcl5.a", t1::ptr(8, false), 3, t23::R);
        vertical("hcl5.b", t1::ptr(8, true), 3, t23::L);

        auto end_not = [&out](std::string name, Anchor a, std::uint8_t p1v, std::uint8_t not2) {
            IllegalPat p;
            p.name = std::move(name);
            p.anchor = a;
            p.any_cell = false;
            p.width = 1;
            p.p1[0] = eq(p1v);
            p.p2[0] = ne(not2);
            out.push_back(p);
        };
        end_not("hcl2.2", Anchor::RightEnd, t1::ptr(2, true), t23::L);
        end_not("hcl2.6", Anchor::RightEnd, t1::ptr(6, true), t23::L);
        end_not("hcl4.4", Anchor::LeftEnd, t1::ptr(4, false), t23::R);
        end_not("hcl5.c", Anchor::LeftEnd, t1::ptr(8, false), t23::R);

        IllegalPat p;
        p.name = "hcl6";
        p.any_cell = true;
        p.width = 2;
        p.p1[0] = eq(t1::Filled), p.p1[1] = eq(t1::ptr(8, false));
        p.p3[0] = eq(t23::R), p.p3[1] = eq(t23::Dead);
        out.push_back(p);
        return out;
    }();
    return pats;
}

inline bool is_illegal(const ClockConfig& c) {
    int n = c.cells();
    for (const IllegalPat& p : illegal_patterns()) {
        if (p.any_cell) {
            for (int pos = 0; pos + p.width <= n; ++pos)
                if (p.matches_at(c, pos)) return true;
        } else if (p.anchor == Anchor::LeftEnd) {
            if (p.matches_at(c, 0)) return true;
        } else {
            if (p.matches_at(c, n - 1)) return true;
        }
    }
    return false;
}

// --- stepping ------------------------------------------------------------------

struct Match {
    const ClockRule* rule = nullptr;
    int pos = 0;  // left column of the window
};

// All rule applications at the track-1 pointer. Well-formed configurations
// admit at most one; callers may assert that.
inline std::vector<Match> find_matches(const ClockConfig& c) {
    std::vector<Match> out;
    int n = c.cells();
    for (const ClockRule& r : clock_rules()) {
        if (r.anchor == Anchor::LeftEnd) {
            if (r.matches_at(c, 0)) out.push_back({&r, 0});
        } else if (r.anchor == Anchor::RightEnd) {
            if (r.matches_at(c, n - 1)) out.push_back({&r, n - 1});
        } else {
            for (int pos = 0; pos + 1 < n; ++pos)
                if (r.matches_at(c, pos)) out.push_back({&r, pos});
        }
    }
    return out;
}

enum class StepKind { Next, None, Illegal };

struct StepResult {
    StepKind kind;
    ClockConfig next;       // valid when kind == Next
    Match match;            // rule that fired
};

inline StepResult step_forward(const ClockConfig& c) {
    require(well_formed(c), "step_forward: configuration is not well-formed");
    if (is_illegal(c)) return {StepKind::Illegal, {}, {}};
    std::vector<Match> ms = find_matches(c);
    if (ms.empty()) return {StepKind::None, {}, {}};
    require(ms.size() == 1, "step_forward: transition rules are ambiguous here");
    ClockConfig next = c;
    ms[0].rule->apply(next, ms[0].pos);
    return {StepKind::Next, std::move(next), ms[0]};
}

// --- classification --------------------------------------------------------------

enum class ConfigClass { Correct, Incorrect, NotWellFormed };

inline ConfigClass classify(const ClockConfig& c) {
    if (!well_formed(c)) return ConfigClass::NotWellFormed;
    int n = c.cells();
    int pc = pointer_cell_t1(c);
    std::uint8_t pv = c.track1[size_t(pc)];
    int fam = t1::family(pv);
    bool right = t1::right(pv);
    int p2 = pointer_cell(c.track2);
    bool r2 = c.track2[size_t(p2)] == t23::R;

    // tracks 1 and 2
    if (fam == 4 || fam == 8) {
        if (!(p2 == 0 && r2)) return ConfigClass::Incorrect;
    } else if (fam == 2 || fam == 6) {
        if (!(p2 == n - 1 && !r2)) return ConfigClass::Incorrect;
    } else if (fam == 1 || fam == 5) {
        if (!r2) return ConfigClass::Incorrect;
    } else {  // 3 or 7
        if (r2) return ConfigClass::Incorrect;
    }
    if (fam == 1 || fam == 3 || fam == 5 || fam == 7) {
        if (pc == p2 && right != r2) return ConfigClass::Incorrect;
    }

    // track 3
    int p3 = pointer_cell(c.track3);
    bool r3 = c.track3[size_t(p3)] == t23::R;
    if (fam == 8 && pc == p3 && right != r3) return ConfigClass::Incorrect;
    if (!r3 && p3 == 0 && fam != 8) return ConfigClass::Incorrect;
    if (r3 && p3 + 1 < n && c.track3[size_t(p3 + 1)] == t23::Dead && fam == 8 &&
        c.track3[size_t(pc)] == t23::Dead)
        return ConfigClass::Incorrect;
    return ConfigClass::Correct;
}

// --- enumeration and graph -------------------------------------------------------

inline std::vector<ClockConfig> enumerate_wellformed(int n, int timer) {
    require(n >= 4, "enumerate: N must be >= 4");
    require(timer >= 0 && timer <= n - 3, "enumerate: timer out of range");
    int cells = n - 2;
    std::vector<std::vector<std::uint8_t>> t3s;
    for (int right = 0; right < 2; ++right)
        for (int j = 0; j <= timer; ++j) {
            std::vector<std::uint8_t> t3(size_t(cells), t23::Dead);
            int filled = right ? j : timer - j;
            for (int i = 0; i < filled; ++i) t3[size_t(i)] = t23::Filled;
            t3[size_t(filled)] = right ? t23::R : t23::L;
            for (int i = filled + 1; i <= timer; ++i) t3[size_t(i)] = t23::Blank;
            t3s.push_back(std::move(t3));
        }

    std::vector<ClockConfig> out;
    for (int fam = 1; fam <= 8; ++fam)
        for (int dir = 0; dir < 2; ++dir)
            for (int pos1 = 0; pos1 < cells; ++pos1)
                for (int dir2 = 0; dir2 < 2; ++dir2)
                    for (int pos2 = 0; pos2 < cells; ++pos2)
                        for (const auto& t3 : t3s) {
                            ClockConfig c;
                            c.track1.assign(size_t(cells), t1::Blank);
                            for (int i = 0; i < pos1; ++i) c.track1[size_t(i)] = t1::Filled;
                            c.track1[size_t(pos1)] = t1::ptr(fam, dir == 1);
                            c.track2.assign(size_t(cells), t23::Blank);
                            for (int i = 0; i < pos2; ++i) c.track2[size_t(i)] = t23::Filled;
                            c.track2[size_t(pos2)] = dir2 ? t23::R : t23::L;
                            c.track3 = t3;
                            out.push_back(std::move(c));
                        }
    return out;
}

struct GraphReport {
    int n = 0;
    int timer = 0;
    std::int64_t node_count = 0;
    std::int64_t correct_count = 0;
    std::int64_t expected_correct = 0;  // (2T+1) p(N)
    bool single_correct_cycle = false;
    std::int64_t cycle_length = 0;
    bool tracks12_spacing_ok = false;  // every tracks-1-2 correct config at spacing p(N)
    bool degrees_ok = false;
    bool timer_conserved = false;
    bool incorrect_paths_ok = false;  // all incorrect nodes reach an illegal node within p(N)
    std::int64_t max_incorrect_path = 0;
    std::int64_t stuck_nodes = 0;  // legal nodes without a successor (should be none)
    bool ok() const {
        return single_correct_cycle && tracks12_spacing_ok && degrees_ok && timer_conserved &&
               incorrect_paths_ok && correct_count == expected_correct && stuck_nodes == 0;
    }
};

struct ConfigGraph {
    std::vector<ClockConfig> nodes;
    std::vector<int> succ;  // -1 none, -2 illegal terminal
    std::unordered_map<std::string, int> index;
};

inline ConfigGraph build_graph_raw(int n, int timer) {
    ConfigGraph g;
    g.nodes = enumerate_wellformed(n, timer);
    g.index.reserve(g.nodes.size() * 2);
    for (size_t i = 0; i < g.nodes.size(); ++i)
        g.index[g.nodes[i].key()] = static_cast<int>(i);
    g.succ.assign(g.nodes.size(), -1);
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        StepResult r = step_forward(g.nodes[i]);
        if (r.kind == StepKind::Illegal) {
            g.succ[i] = -2;
        } else if (r.kind == StepKind::Next) {
            auto it = g.index.find(r.next.key());
            require(it != g.index.end(), "successor left the well-formed set");
            g.succ[i] = it->second;
        }
    }
    return g;
}

inline GraphReport build_graph(int n, int timer, ConfigGraph* out_graph = nullptr,
                               std::int64_t budget_nodes = 2000000) {
    GraphReport rep;
    rep.n = n;
    rep.timer = timer;
    std::int64_t p = clock_period_i64(n);
    rep.expected_correct = (2 * std::int64_t(timer) + 1) * p;

    ConfigGraph g = build_graph_raw(n, timer);
    rep.node_count = static_cast<std::int64_t>(g.nodes.size());
    require(rep.node_count <= budget_nodes, "clock graph budget exceeded: " +
                                                std::to_string(rep.node_count) + " nodes");

    std::vector<int> indeg(g.nodes.size(), 0);
    bool timer_ok = true;
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        if (g.succ[i] >= 0) {
            ++indeg[size_t(g.succ[i])];
            if (timer_length(g.nodes[i]) != timer_length(g.nodes[size_t(g.succ[i])]))
                timer_ok = false;
        }
    }
    rep.timer_conserved = timer_ok;
    rep.degrees_ok = *std::max_element(indeg.begin(), indeg.end()) <= 1;

    std::vector<bool> correct(g.nodes.size());
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        correct[i] = classify(g.nodes[i]) == ConfigClass::Correct;
        if (correct[i]) ++rep.correct_count;
    }

    // the correct cycle
    ClockConfig start = time_zero(n, timer);
    int s = g.index.at(start.key());
    std::vector<int> cycle;
    std::vector<std::string> t12keys;
    int cur = s;
    bool closed = false;
    for (std::int64_t k = 0; k <= rep.expected_correct + 1; ++k) {
        cycle.push_back(cur);
        if (!correct[size_t(cur)]) break;
        int nxt = g.succ[size_t(cur)];
        if (nxt < 0) break;
        if (nxt == s) {
            closed = true;
            break;
        }
        cur = nxt;
    }
    rep.cycle_length = closed ? static_cast<std::int64_t>(cycle.size()) : 0;
    bool all_correct_on_cycle = true;
    for (int idx : cycle) all_correct_on_cycle = all_correct_on_cycle && correct[size_t(idx)];
    rep.single_correct_cycle =
        closed && all_correct_on_cycle && rep.cycle_length == rep.expected_correct &&
        rep.correct_count == rep.expected_correct;

    // every tracks-1-2 configuration recurs at spacing exactly p(N)
    if (rep.single_correct_cycle) {
        std::map<std::string, std::vector<std::int64_t>> seen;
        for (size_t k = 0; k < cycle.size(); ++k) {
            const ClockConfig& c = g.nodes[size_t(cycle[k])];
            std::string k12;
            for (auto v : c.track1) k12 += static_cast<char>('A' + v);
            for (auto v : c.track2) k12 += static_cast<char>('a' + v);
            seen[k12].push_back(static_cast<std::int64_t>(k));
        }
        rep.tracks12_spacing_ok = true;
        for (const auto& [key, at] : seen) {
            if (static_cast<std::int64_t>(at.size()) != 2 * timer + 1) {
                rep.tracks12_spacing_ok = false;
                break;
            }
            for (size_t j = 0; j + 1 < at.size(); ++j)
                if (at[j + 1] - at[j] != p) rep.tracks12_spacing_ok = false;
        }
    }

    // incorrect configurations head into an illegal dead end within p(N) steps
    rep.incorrect_paths_ok = true;
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        if (correct[i]) continue;
        if (g.succ[i] == -1) ++rep.stuck_nodes;
        std::int64_t len = 0;
        int at = static_cast<int>(i);
        while (g.succ[size_t(at)] >= 0 && len <= p) {
            at = g.succ[size_t(at)];
            ++len;
            if (correct[size_t(at)]) rep.incorrect_paths_ok = false;
        }
        if (g.succ[size_t(at)] != -2 || len > p) rep.incorrect_paths_ok = false;
        rep.max_incorrect_path = std::max(rep.max_incorrect_path, len);
    }

    if (out_graph) *out_graph = std::move(g);
    return rep;
}

// --- serialization ---------------------------------------------------------------

inline std::string t1_token(std::uint8_t v) {
    if (v == t1::Filled) return "D";
    if (v == t1::Blank) return "b";
    return std::string(t1::right(v) ? "R" : "L") + std::to_string(t1::family(v));
}
inline std::string t2_token(std::uint8_t v) {
    switch (v) {
        case t23::Filled: return "D";
        case t23::Blank: return "b";
        case t23::L: return "L";
        case t23::R: return "R";
    }
    return "?";
}
inline std::string t3_token(std::uint8_t v) { return v == t23::Dead ? "x" : t2_token(v); }

inline std::string pretty(const ClockConfig& c) {
    std::string out;
    for (auto v : c.track1) out += t1_token(v) + " ";
    out += "| ";
    for (auto v : c.track2) out += t2_token(v) + " ";
    out += "| ";
    for (auto v : c.track3) out += t3_token(v) + " ";
    return out;
}

}  // namespace tihsim::clk
