#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tihsim/bigfixed.hpp"
#include "tihsim/common.hpp"
#include "tihsim/oracle.hpp"
#include "tihsim/spectral.hpp"

namespace tihsim::ged {

using fx::BigFixed;
using oracle::OracleInstance;

// Truncated ground-energy-density series for a toy instance. The insufficiency
// set lists the k whose chains are treated as unfinished (zero contribution).
struct GedSeries {
    OracleInstance instance;
    std::set<std::int64_t> insufficient;
    std::int64_t k_max = 16;
    std::int64_t precision_bits = 256;
};

inline std::optional<std::int64_t> perfect_sqrt(std::int64_t k) {
    std::int64_t s = static_cast<std::int64_t>(std::sqrt(double(k)));
    for (std::int64_t c = std::max<std::int64_t>(1, s - 1); c <= s + 1; ++c)
        if (c * c == k) return c;
    return std::nullopt;
}

// Ground energy of the chain of length 4^k: zero off the perfect squares and
// the insufficiency set, the two-half-penalty closed form otherwise.
inline BigFixed lambda0_4k(const GedSeries& series, std::int64_t k, std::int64_t bits = 0) {
    require(k >= 1, "lambda0_4k: k must be >= 1");
    if (bits <= 0) bits = series.precision_bits;
    if (series.insufficient.count(k)) return BigFixed::from_int(0);
    auto s = perfect_sqrt(k);
    if (!s) return BigFixed::from_int(0);
    std::string y = series.instance.correct_answers(*s);
    cpp_int timer = oracle::t_of_xy(series.instance, *s, y);
    cpp_int p = clock_period(cpp_int(1) << (2 * k));
    return spectral::cycle_two_halves_exact((2 * timer + 1) * p, bits);
}

// Truncated series with a certified tail: sum_{k>k_max} 4^-(2k+1) <= 4^-(2k_max+2)/3.
inline BigFixed alpha0(const GedSeries& series) {
    std::int64_t bits = series.precision_bits;
    std::int64_t tail_exp = 4 * series.k_max + 5;  // 2^-(4k+5) overestimates the tail bound
    if (tail_exp < bits) {
        std::int64_t need = (bits - 5 + 3) / 4;
        throw error("alpha0: truncation too short for the requested precision; need k_max >= " +
                    std::to_string(need));
    }
    std::int64_t work = bits + 32;
    BigFixed acc = BigFixed::from_int(0);
    for (std::int64_t k = 1; k <= series.k_max; ++k) {
        BigFixed lam = lambda0_4k(series, k, work);
        if (lam.is_zero()) continue;
        acc = add(acc, mul(lam, BigFixed::pow2(-(4 * k + 2))));
    }
    return BigFixed::from_parts(acc.negative(), acc.mantissa(), acc.scale(), bits);
}

// l(k): the k-th square's contribution density before the lattice weighting.
inline BigFixed l_of(const OracleInstance& inst, std::int64_t k, std::int64_t bits) {
    std::string y = inst.correct_answers(k);
    cpp_int timer = oracle::t_of_xy(inst, k, y);
    cpp_int nk = cpp_int(1) << (2 * k * k);  // 4^(k^2)
    cpp_int p = clock_period(nk);
    BigFixed e = spectral::cycle_two_halves_exact((2 * timer + 1) * p, bits);
    return mul(e, BigFixed::pow2(-(4 * k * k + 2)));  // divide by 4 N_k^2
}

// Least precision q with 2^-q <= l(x+1).
inline std::int64_t q_bits_for(const OracleInstance& inst, std::int64_t x) {
    BigFixed l = l_of(inst, x + 1, 160);
    return -l.magnitude_low_exp() + 1;
}

struct ExtractResult {
    bool ok = false;
    bool insufficient_k = false;
    std::int64_t f = 0;
    std::vector<cpp_int> timers;  // recovered timer per processed square
    std::int64_t q_bits = 0;
    std::int64_t precision_highwater = 0;
    std::string diagnostic;
};

// Inductive recovery of f(x) from an approximate ground energy density.
// Peels one square at a time: rescale the residual, identify the unique timer
// among the finitely many candidates, subtract a high-precision estimate of
// that square's contribution, and finally read f from the timer's low bits.
inline ExtractResult extract_f(const BigFixed& alpha, std::int64_t x, const GedSeries& series) {
    ExtractResult res;
    const OracleInstance& inst = series.instance;
    res.q_bits = q_bits_for(inst, x);
    std::int64_t work = res.q_bits + 64;
    res.precision_highwater = work;

    BigFixed cur = alpha;
    for (std::int64_t s = 1; s <= x; ++s) {
        if (series.insufficient.count(s * s)) {
            if (s == x) {
                res.insufficient_k = true;
                res.diagnostic = "square " + std::to_string(s * s) + " marked insufficient";
                return res;
            }
            res.timers.push_back(0);
            continue;
        }
        cpp_int nk = cpp_int(1) << (2 * s * s);
        cpp_int p = clock_period(nk);
        BigFixed lam = mul(cur, BigFixed::pow2(4 * s * s + 2));  // 4 N_s^2 * alpha_s

        int m = inst.query_count(s);
        cpp_int lo = 4, hi = cpp_int(1) << (3 * m + 3);
        std::optional<cpp_int> best;
        std::optional<BigFixed> best_diff, second_diff;
        for (cpp_int t = lo; t <= hi; ++t) {
            BigFixed e = spectral::cycle_two_halves_exact((2 * t + 1) * p, work);
            BigFixed d = sub(lam, e).abs();
            if (!best_diff || cmp(d, *best_diff) < 0) {
                if (best_diff) second_diff = best_diff;
                best = t;
                best_diff = d;
            } else if (!second_diff || cmp(d, *second_diff) < 0) {
                second_diff = d;
            }
        }
        require(best.has_value() && second_diff.has_value(), "extract_f: empty candidate range");
        // uniqueness certificate: the runner-up must sit certifiably farther out
        if (!certified_less(*best_diff, *second_diff)) {
            res.diagnostic = "extract_f: residual is ambiguous between timer candidates at s = " +
                             std::to_string(s);
            return res;
        }
        res.timers.push_back(*best);
        if (s == x) {
            res.f = static_cast<std::int64_t>((*best) % (cpp_int(1) << m));
            res.ok = true;
            return res;
        }
        BigFixed lhat =
            mul(spectral::cycle_two_halves_exact((2 * (*best) + 1) * p, work),
                BigFixed::pow2(-(4 * s * s + 2)));
        cur = sub(cur, lhat);
    }
    res.diagnostic = "extract_f: loop ended unexpectedly";
    return res;
}

// --- promise-oracle binary search -------------------------------------------

// Answers reliably outside a 2^-n window above the threshold; inside the
// window the configured adversary decides.
struct PromiseOracle {
    cpp_int num;  // hidden value num/den in [0,1]
    cpp_int den;
    enum class Adversary { Accept, Reject } adversary = Adversary::Accept;

    // query threshold a/2^b with promise gap 2^-n
    bool accept(const cpp_int& a, std::int64_t b, std::int64_t n) const {
        // num/den <= a/2^b  <=>  num * 2^b <= a * den
        if (num * (cpp_int(1) << b) <= a * den) return true;
        // num/den >= a/2^b + 2^-n  <=>  num * 2^(b+n) >= (a * 2^n + 2^b) * den
        if (num * (cpp_int(1) << (b + n)) >= (a * (cpp_int(1) << n) + (cpp_int(1) << b)) * den)
            return false;
        return adversary == Adversary::Accept;
    }

    bool contains(const cpp_int& lnum, const cpp_int& unum, std::int64_t b) const {
        cpp_int scaled = num * (cpp_int(1) << b);
        return lnum * den <= scaled && scaled <= unum * den;
    }
};

struct SearchResult {
    cpp_int l_num, u_num;  // bounds over the grid of 2^-(rounds+1)
    std::int64_t rounds = 0;
    BigFixed l, u;
};

// Two promise queries per round; the interval halves each time.
// All bounds live on the dyadic grid of 2^-(rounds+1).
template <typename Oracle>
SearchResult binary_search(const Oracle& oracle, std::int64_t rounds) {
    require(rounds >= 1 && rounds <= 4096, "binary_search: bad round count");
    const std::int64_t grid = rounds + 1;
    cpp_int l = 0;
    cpp_int u = cpp_int(1) << grid;
    for (std::int64_t j = 1; j <= rounds; ++j) {
        cpp_int step = cpp_int(1) << (grid - j - 1);  // 2^-(j+1)
        bool a1 = oracle.accept(l + step, grid, j + 1);
        bool a2 = oracle.accept(l + 2 * step, grid, j + 1);
        require(!(a1 && !a2), "binary_search: oracle accepted below a rejection");
        if (a1) {
            u = l + 2 * step;
        } else if (!a2) {
            l = l + 2 * step;
        } else {
            u = l + 3 * step;
            l = l + step;
        }
        require(u - l == 2 * step, "binary_search: interval width drifted");
    }
    SearchResult res;
    res.l_num = l;
    res.u_num = u;
    res.rounds = rounds;
    res.l = BigFixed::from_parts(false, l, -grid, fx::kExact);
    res.u = BigFixed::from_parts(false, u, -grid, fx::kExact);
    return res;
}

// --- decay of the square contributions ----------------------------------------

struct DecayRow {
    std::int64_t k;
    cpp_int timer;          // T_k
    cpp_int n_ratio;        // N_{k+1} / N_k
    bool timer_bounded;     // T_k <= N_{k+1} / N_k
    double l_ratio;         // l(k) / l(k+1)
    bool halves;            // l(k+1) < l(k) / 2
};

struct DecayReport {
    std::vector<DecayRow> rows;
    bool all_ok = true;
};

inline DecayReport decay_checks(const OracleInstance& inst, std::int64_t k_hi = 3,
                                std::int64_t bits = 256) {
    DecayReport rep;
    for (std::int64_t k = 1; k <= k_hi; ++k) {
        DecayRow row;
        row.k = k;
        row.timer = oracle::t_of_xy(inst, k, inst.correct_answers(k));
        row.n_ratio = cpp_int(1) << (2 * (k + 1) * (k + 1) - 2 * k * k);
        row.timer_bounded = row.timer <= row.n_ratio;
        BigFixed lk = l_of(inst, k, bits);
        BigFixed lk1 = l_of(inst, k + 1, bits);
        row.halves = certified_less(add(lk1, lk1), lk);
        row.l_ratio = div(lk, lk1, 64).to_double();
        rep.all_ok = rep.all_ok && row.timer_bounded && row.halves;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace tihsim::ged
