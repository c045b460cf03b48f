#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tihsim/blocks.hpp"
#include "tihsim/clock.hpp"
#include "tihsim/ged.hpp"
#include "tihsim/machines.hpp"
#include "tihsim/oracle.hpp"
#include "tihsim/robinson.hpp"
#include "tihsim/spectral.hpp"
#include "tihsim/turing.hpp"

namespace tihsim::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline const oracle::OracleInstance& instance(int i) {
    static oracle::OracleInstance insts[3] = {oracle::toy_m0(), oracle::toy_m1(),
                                              oracle::toy_m2()};
    return insts[i];
}

inline const blocks::InstanceMachines& machines(int i) {
    static blocks::InstanceMachines ms[3] = {blocks::build_instance_machines(instance(0)),
                                             blocks::build_instance_machines(instance(1)),
                                             blocks::build_instance_machines(instance(2))};
    return ms[i];
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

inline std::int64_t smallest_valid_n(int i, std::int64_t hi = 400) {
    const auto& inst = instance(i);
    const auto& ms = machines(i);
    for (std::int64_t n = 7; n <= hi; ++n) {
        std::int64_t x = blocks::chain_input_value(ms, n);
        if (oracle::t_of_xy(inst, x, inst.correct_answers(x)) <= n - 3) return n;
    }
    return -1;
}

}  // namespace detail

// 1. Exact spectrum of the cycle with two adjacent half penalties.
inline CriterionResult criterion1() {
    CriterionResult r{1, "closed-form spectrum for L = 3..200", false, ""};
    detail::Timer t;
    double worst = 0;
    for (std::int64_t L = 3; L <= 200; ++L) {
        spectral::MatrixSpec spec =
            spectral::cycle_with_penalties(L, {{L - 1, 0.5}, {0, 0.5}});
        double numeric = spectral::smallest_eig(spectral::assemble(spec), 1e-13);
        double closed = spectral::cycle_two_halves_exact(L, 128).to_double();
        worst = std::max(worst, std::abs(numeric - closed));
    }
    bool in_time = t.seconds() <= 60.0;
    r.pass = worst <= 1e-10 && in_time;
    std::ostringstream os;
    os << "max |numeric - closed| = " << worst << (in_time ? ", within budget" : ", over budget");
    r.detail = os.str();
    return r;
}

// 2. Periodic-penalty floor.
inline CriterionResult criterion2() {
    CriterionResult r{2, "periodic penalty floor for r <= 10, s <= 20", false, ""};
    detail::Timer t;
    double worst_margin = 1e9;
    for (std::int64_t rr = 1; rr <= 10; ++rr) {
        for (std::int64_t s = 1; s <= 20; ++s) {
            double numeric =
                spectral::smallest_eig(spectral::assemble(spectral::cycle_with_periodic(rr, s, 0)),
                                       1e-13);
            double bound = spectral::periodic_lower_bound(s, 96).to_double();
            worst_margin = std::min(worst_margin, numeric - bound);
        }
    }
    bool in_time = t.seconds() <= 120.0;
    r.pass = worst_margin >= -1e-12 && in_time;
    std::ostringstream os;
    os << "min (numeric - bound) = " << worst_margin
       << (in_time ? ", within budget" : ", over budget");
    r.detail = os.str();
    return r;
}

// 3. Fourier-block identity.
inline CriterionResult criterion3() {
    CriterionResult r{3, "fourier block identity for r, s <= 8", false, ""};
    double worst = 0;
    for (std::int64_t rr = 1; rr <= 8; ++rr)
        for (std::int64_t s = 1; s <= 8; ++s)
            worst = std::max(worst, spectral::fourier_block_max_error(rr, s));
    r.pass = worst <= 1e-10;
    std::ostringstream os;
    os << "max entry error = " << worst;
    r.detail = os.str();
    return r;
}

// 4. Clock graph structure.
inline CriterionResult criterion4() {
    CriterionResult r{4, "clock graph structure for N = 4..8, all T", false, ""};
    detail::Timer t;
    bool ok = true;
    std::int64_t graphs = 0;
    for (int n = 4; n <= 8; ++n) {
        for (int timer = 0; timer <= n - 3; ++timer) {
            clk::GraphReport rep = clk::build_graph(n, timer);
            ok = ok && rep.ok() && rep.max_incorrect_path <= clock_period_i64(n);
            ++graphs;
        }
    }
    bool in_time = t.seconds() <= 300.0;
    r.pass = ok && in_time;
    std::ostringstream os;
    os << graphs << " graphs checked" << (in_time ? ", within budget" : ", over budget");
    r.detail = os.str();
    return r;
}

// 5. Counter reduction law.
inline CriterionResult criterion5() {
    CriterionResult r{5, "counter reduction law for |x| = 2..10", false, ""};
    tm::TuringMachine m = tm::build_mbc();
    bool ok = true;
    std::int64_t dmin = 0, dmax = 0, cases = 0;
    for (int len = 2; len <= 10 && ok; ++len) {
        for (int bits = 0; bits < (1 << (len - 1)) && ok; ++bits) {
            std::string x;
            for (int i = 0; i < len - 1; ++i) x += ((bits >> i) & 1) ? '1' : '0';
            x += '1';
            tm::NofxResult nres = tm::n_of_x(x);
            ok = ok && cpp_int(nres.operational) >= (cpp_int(1) << x.size());
            ok = ok && nres.head_min >= 1 && nres.head_max <= nres.operational - 4;
            tm::TapeConfig c = tm::make_config(m, "1" + std::string(x.size() + 4, '#'));
            tm::RunResult rr = tm::run(m, c, nres.operational - 2);
            ok = ok && rr.config.state == m.final_state() && rr.config.head == 1;
            std::string got = tm::work_string(m, rr.config);
            ok = ok && got.substr(0, x.size()) == x &&
                 got.find_first_not_of('#', x.size()) == std::string::npos;
            std::int64_t l = 0;
            while (l < len && x[size_t(l)] == '1') ++l;
            tm::TapeConfig inc = tm::make_config(m, x + "####");
            ok = ok && tm::increment_steps(m, inc) == (l == 0 ? 1 : 2 * l + 3);
            dmin = std::min(dmin, nres.operational - nres.closed_form);
            dmax = std::max(dmax, nres.operational - nres.closed_form);
            ++cases;
        }
    }
    r.pass = ok;
    std::ostringstream os;
    os << cases << " strings; operational-vs-closed-form delta in [" << dmin << ", " << dmax
       << "] (reported, not asserted)";
    r.detail = os.str();
    return r;
}

// 6. Reversibility suite.
inline CriterionResult criterion6() {
    CriterionResult r{6, "reversibility suite and round trips", false, ""};
    bool ok = true;
    auto both = [&](const tm::TuringMachine& m, bool want_normal) {
        tm::ReversibilityReport rep = tm::check_reversible(m);
        ok = ok && rep.unidirectional && rep.reduced_injective &&
             (!want_normal || rep.normal_form);
    };
    both(tm::build_mbc(), true);
    both(tm::build_mpost(), true);
    for (int i = 0; i < 3; ++i) {
        both(detail::machines(i).mbc, true);
        both(detail::machines(i).mcheck, false);
        both(blocks::build_toy_tv(detail::instance(i), blocks::toy_params_for(detail::instance(i))),
             true);
    }
    both(tm::dovetail(tm::build_mbc(), tm::with_renamed_states(tm::build_mbc(), "'")), true);
    both(tm::add_symbols(tm::build_mbc(), "gA"), true);
    both(tm::add_states(tm::build_mbc(), "spare"), true);

    // forward-backward identity over random reachable configurations
    const tm::TuringMachine& m = detail::machines(0).mbc;
    tm::ReverseStepper rev(m);
    std::mt19937_64 rng(20260810);
    int trips = 0;
    for (int trial = 0; trial < 500 && ok; ++trial) {
        int len = 9 + int(rng() % 4);
        std::string wit;
        for (int i = 0; i < len; ++i) wit += (rng() & 1) ? '1' : '0';
        tm::TapeConfig c = tm::make_config(m, "1" + std::string(size_t(len - 1), '#'), wit);
        c = tm::run(m, c, std::int64_t(rng() % 120)).config;
        for (int k = 0; k < 20 && ok; ++k) {
            tm::TapeConfig before = c;
            tm::step(m, c);
            tm::TapeConfig after = c;
            ok = ok && rev.step_back(after) && after == before;
            ++trips;
        }
    }
    r.pass = ok;
    r.detail = std::to_string(trips) + " forward-backward round trips";
    return r;
}

// 7. Cyclic computation plus mutation sensitivity.
inline CriterionResult criterion7() {
    CriterionResult r{7, "cyclic computation at N = 6, 8 and mutation sensitivity", false, ""};
    bool ok = true;
    int walks = 0;
    for (int i = 0; i < 3 && ok; ++i) {
        for (std::int64_t n : {6, 8}) {
            for (std::int64_t timer = 0; timer <= n - 3 && ok; ++timer) {
                std::string w;
                for (std::int64_t k = 0; k < n - 4; ++k) w += (k % 2) ? '1' : '0';
                ok = ok && blocks::track_walk_cycle_check(detail::instance(i),
                                                          detail::machines(i), n, timer, w)
                               .ok;
                ++walks;
            }
        }
    }
    // one corrupted rule flips the check
    blocks::InstanceMachines broken{detail::machines(0).mbc, detail::machines(0).mcheck};
    int q0 = broken.mcheck.state_id("q0"), qf = broken.mcheck.state_id("qf");
    int zero = broken.mcheck.symbol_id("0");
    broken.mcheck.remove_rule(q0, zero, -1);
    broken.mcheck.add_rule_ids(q0, zero, qf, zero, tm::Dir::N);
    bool flipped =
        !blocks::track_walk_cycle_check(detail::instance(0), broken, 8, 1, "0101").ok;
    r.pass = ok && flipped;
    r.detail = std::to_string(walks) + " walks cyclic; corrupted rule detected: " +
               (flipped ? "yes" : "no");
    return r;
}

// 8. Correct-guess minimization at the smallest valid chain length.
inline CriterionResult criterion8() {
    CriterionResult r{8, "ground energy sits at the correct oracle answers", false, ""};
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 3 && ok; ++i) {
        std::int64_t n = detail::smallest_valid_n(i);
        ok = ok && n > 0;
        if (!ok) break;
        blocks::GlobalResult g =
            blocks::global_ground_energy(detail::instance(i), detail::machines(i), n, 192);
        ok = ok && g.found_s4 && g.argmin_is_correct_y && g.strict_order && g.bounds_dominate;
        fx::BigFixed closed = spectral::cycle_two_halves_exact(
            (2 * cpp_int(g.argmin.timer) + 1) * clock_period(n), 192);
        ok = ok && std::abs(sub(g.energy, closed).to_double()) <= 1e-12;
        detail += detail::instance(i).name + ": N=" + std::to_string(n) +
                  " argmin-correct=" + (g.argmin_is_correct_y ? "y" : "n") + "; ";
        if (i == 0) {
            blocks::GlobalResult ex = blocks::global_ground_energy_exhaustive(
                detail::instance(i), detail::machines(i), n, 192);
            ok = ok && cmp(ex.energy, g.energy) == 0;
        }
    }
    r.pass = ok;
    r.detail = detail;
    return r;
}

// 9. Extraction round trip with perturbations.
inline CriterionResult criterion9() {
    CriterionResult r{9, "extraction round trip with perturbations", false, ""};
    detail::Timer t;
    bool ok = true;
    std::int64_t highwater = 0;
    std::mt19937_64 rng(41);
    for (int i = 0; i < 3 && ok; ++i) {
        ged::GedSeries series;
        series.instance = detail::instance(i);
        series.precision_bits = 320;
        series.k_max = 85;
        fx::BigFixed a = ged::alpha0(series);
        for (std::int64_t x = 1; x <= 3 && ok; ++x) {
            std::string y = series.instance.correct_answers(x);
            std::int64_t want = series.instance.f_of(x, y);
            ged::ExtractResult res = ged::extract_f(a, x, series);
            ok = ok && res.ok && res.f == want;
            highwater = std::max(highwater, res.precision_highwater);
            std::vector<fx::BigFixed> dithers = {fx::BigFixed::pow2(-res.q_bits - 1),
                                                 -fx::BigFixed::pow2(-res.q_bits - 1)};
            for (int trial = 0; trial < 3; ++trial)
                dithers.push_back(fx::BigFixed::from_parts(rng() & 1, cpp_int(rng() | 1),
                                                           -res.q_bits - 65, fx::kExact));
            for (const fx::BigFixed& eps : dithers) {
                if (!ok) break;
                ged::ExtractResult pres = ged::extract_f(add(a, eps), x, series);
                ok = ok && pres.ok && pres.f == want;
            }
        }
    }
    bool in_time = t.seconds() <= 120.0;
    bool in_bits = highwater <= 4096;
    r.pass = ok && in_time && in_bits;
    std::ostringstream os;
    os << "precision high water " << highwater << " bits"
       << (in_time ? ", within budget" : ", over budget");
    r.detail = os.str();
    return r;
}

// 10. Promise-oracle binary search.
inline CriterionResult criterion10() {
    CriterionResult r{10, "promise binary search over 100 random rationals", false, ""};
    std::mt19937_64 rng(59);
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        cpp_int den = cpp_int(rng() % 999983 + 1);
        cpp_int num = cpp_int(rng()) % (den + 1);
        for (auto adv :
             {ged::PromiseOracle::Adversary::Accept, ged::PromiseOracle::Adversary::Reject}) {
            ged::PromiseOracle o{num, den, adv};
            ged::SearchResult s = ged::binary_search(o, 30);
            ok = ok && (s.u_num - s.l_num == 2);  // 2^-30 on the 2^-31 grid
            ok = ok && o.contains(s.l_num, s.u_num, s.rounds + 1);
        }
    }
    r.pass = ok;
    r.detail = "interval width 2^-30 exact, value contained, both adversaries";
    return r;
}

// 11. Square-count interval and its convergence.
inline CriterionResult criterion11() {
    CriterionResult r{11, "square hierarchy counts and energy interval", false, ""};
    bool ok = true;
    ged::GedSeries series;
    series.instance = detail::instance(1);
    fx::BigFixed prev_gap;
    bool have_prev = false;
    for (std::int64_t m = 1; m <= 8 && ok; ++m) {
        std::int64_t grid = std::int64_t(1) << (2 * m);
        robinson::SquareHierarchy h = robinson::hierarchy(grid);
        std::int64_t depth = robinson::interval_depth(grid);
        for (const robinson::Level& lv : h.levels) {
            if (lv.k > depth) continue;
            std::int64_t q = grid >> (2 * lv.k + 1);
            ok = ok && lv.count() >= q * (q - 1) && lv.count() <= q * (q + 1);
        }
        if (depth < 1) continue;
        std::map<std::int64_t, fx::BigFixed> lambdas;
        fx::BigFixed truncated = fx::BigFixed::from_int(0);
        for (std::int64_t k = 1; k <= depth; ++k) {
            lambdas[k] = ged::lambda0_4k(series, k, 192);
            truncated = add(truncated, mul(lambdas[k], fx::BigFixed::pow2(-(4 * k + 2))));
        }
        robinson::EnergyInterval iv = robinson::energy_interval(grid, lambdas);
        fx::BigFixed scale = fx::BigFixed::pow2(-4 * m);
        fx::BigFixed lo = mul(iv.lo, scale), hi = mul(iv.hi, scale);
        ok = ok && cmp(lo, truncated) <= 0 && cmp(truncated, hi) <= 0;
        fx::BigFixed gap = sub(hi, lo);
        if (have_prev) ok = ok && certified_less(gap, prev_gap);
        prev_gap = gap;
        have_prev = true;
    }
    r.pass = ok;
    r.detail = "grids up to 4^8, floor intervals and monotone bracketing gap";
    return r;
}

// 12. Decay claims.
inline CriterionResult criterion12() {
    CriterionResult r{12, "tally and contribution decay for k = 1..3", false, ""};
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
        ged::DecayReport rep = ged::decay_checks(detail::instance(i), 3);
        ok = ok && rep.all_ok;
    }
    r.pass = ok;
    r.detail = "T_k <= N_{k+1}/N_k and l(k+1) < l(k)/2 on every toy instance";
    return r;
}

inline std::vector<CriterionResult> run_all(const std::vector<int>& only = {}) {
    std::vector<CriterionResult (*)()> fns = {criterion1, criterion2,  criterion3,  criterion4,
                                              criterion5, criterion6,  criterion7,  criterion8,
                                              criterion9, criterion10, criterion11, criterion12};
    std::vector<CriterionResult> out;
    for (size_t i = 0; i < fns.size(); ++i) {
        if (!only.empty() &&
            std::find(only.begin(), only.end(), static_cast<int>(i + 1)) == only.end())
            continue;
        out.push_back(fns[i]());
    }
    return out;
}

inline std::string format_results(const std::vector<CriterionResult>& rs) {
    std::string out;
    bool all = true;
    for (const CriterionResult& r : rs) {
        out += (r.pass ? "PASS" : "FAIL");
        out += " criterion " + std::to_string(r.id) + ": " + r.name;
        if (!r.detail.empty()) out += " [" + r.detail + "]";
        out += "\n";
        all = all && r.pass;
    }
    out += all ? "all criteria passed\n" : "some criteria FAILED\n";
    return out;
}

}  // namespace tihsim::verify
