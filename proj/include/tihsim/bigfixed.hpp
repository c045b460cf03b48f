#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <tuple>
#include <utility>

#include "tihsim/common.hpp"

namespace tihsim::fx {

using tihsim::cpp_int;

// Sentinel precision for exactly represented values.
constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max();

// Sign-mantissa-scale fixed point: value = sign * mantissa * 2^scale.
// precision_bits certifies |stored - true| <= 2^-precision_bits.
// Values are immutable after construction; all operations return new values.
class BigFixed {
public:
    BigFixed() = default;

    static BigFixed from_int(const cpp_int& v) {
        BigFixed r;
        r.neg_ = v < 0;
        r.mant_ = v < 0 ? cpp_int(-v) : v;
        r.scale_ = 0;
        r.prec_ = kExact;
        r.normalize();
        return r;
    }
    static BigFixed from_int(std::int64_t v) { return from_int(cpp_int(v)); }

    static BigFixed from_parts(bool negative, cpp_int mantissa, std::int64_t scale,
                               std::int64_t precision_bits) {
        require(mantissa >= 0, "BigFixed: mantissa must be nonnegative");
        BigFixed r;
        r.neg_ = negative;
        r.mant_ = std::move(mantissa);
        r.scale_ = scale;
        r.prec_ = precision_bits;
        r.normalize();
        return r;
    }

    // 2^k, exact.
    static BigFixed pow2(std::int64_t k) { return from_parts(false, 1, k, kExact); }

    bool is_zero() const { return mant_ == 0; }
    bool negative() const { return neg_; }
    const cpp_int& mantissa() const { return mant_; }
    std::int64_t scale() const { return scale_; }
    std::int64_t precision_bits() const { return prec_; }
    bool exact() const { return prec_ == kExact; }

    // Smallest e with |value| <= 2^e (only for nonzero values).
    std::int64_t magnitude_exp() const {
        require(mant_ != 0, "magnitude_exp of zero");
        return static_cast<std::int64_t>(boost::multiprecision::msb(mant_)) + 1 + scale_;
    }
    // Largest e with 2^e <= |value|.
    std::int64_t magnitude_low_exp() const {
        require(mant_ != 0, "magnitude_low_exp of zero");
        return static_cast<std::int64_t>(boost::multiprecision::msb(mant_)) + scale_;
    }

    BigFixed operator-() const {
        BigFixed r = *this;
        if (r.mant_ != 0) r.neg_ = !r.neg_;
        return r;
    }

    BigFixed abs() const {
        BigFixed r = *this;
        r.neg_ = false;
        return r;
    }

    friend BigFixed add(const BigFixed& a, const BigFixed& b) {
        auto [am, bm, sc] = aligned(a, b);
        cpp_int av = a.neg_ ? cpp_int(-am) : am;
        cpp_int bv = b.neg_ ? cpp_int(-bm) : bm;
        cpp_int s = av + bv;
        return from_parts(s < 0, s < 0 ? cpp_int(-s) : s, sc, sum_precision(a.prec_, b.prec_));
    }

    friend BigFixed sub(const BigFixed& a, const BigFixed& b) { return add(a, -b); }

    friend BigFixed mul(const BigFixed& a, const BigFixed& b) {
        std::int64_t prec;
        if (a.exact() && b.exact()) {
            prec = kExact;
        } else {
            // |a|eb + |b|ea + ea*eb, each bounded by a power of two.
            std::int64_t worst = std::numeric_limits<std::int64_t>::min();
            auto consider = [&worst](std::int64_t e) { worst = std::max(worst, e); };
            if (!b.exact()) consider((a.mant_ == 0 ? -a.prec_ : a.magnitude_exp()) - b.prec_);
            if (!a.exact()) consider((b.mant_ == 0 ? -b.prec_ : b.magnitude_exp()) - a.prec_);
            if (!a.exact() && !b.exact()) consider(-a.prec_ - b.prec_);
            prec = -(worst + 2);
        }
        return from_parts(a.neg_ != b.neg_, a.mant_ * b.mant_, a.scale_ + b.scale_, prec);
    }

    // Quotient rounded to ulp 2^-bits. Divisor must be certifiably nonzero.
    friend BigFixed div(const BigFixed& a, const BigFixed& b, std::int64_t bits) {
        require(b.mant_ != 0, "division by zero");
        std::int64_t blo = b.magnitude_low_exp();
        if (!b.exact())
            require(blo >= -b.prec_ + 2, "divisor not separated from zero at its precision");
        if (a.mant_ == 0) {
            std::int64_t prec = a.exact() ? kExact : a.prec_ + blo;  // |a/b| <= ea / |b|
            return from_parts(false, 0, 0, prec);
        }

        // q = round(a_mant * 2^(a.scale - b.scale + bits) / b_mant)
        cpp_int num = a.mant_;
        cpp_int den = b.mant_;
        std::int64_t shift = a.scale_ - b.scale_ + bits;
        if (shift >= 0)
            num <<= static_cast<unsigned>(shift);
        else
            den <<= static_cast<unsigned>(-shift);
        cpp_int q = (2 * num + den) / (2 * den);

        bool exact_result = a.exact() && b.exact() && num % den == 0;
        std::int64_t prec;
        if (exact_result) {
            prec = kExact;
        } else {
            std::int64_t worst = -bits - 1;  // rounding
            if (!a.exact()) worst = std::max(worst, -a.prec_ - blo + 1);
            if (!b.exact()) worst = std::max(worst, a.magnitude_exp() - blo - b.prec_ - blo + 1);
            prec = -(worst + 2);
        }
        return from_parts(a.neg_ != b.neg_, q, -bits, prec);
    }

    // Round stored value to ulp 2^-bits (half away from zero), error ledger updated.
    BigFixed round_to(std::int64_t bits) const {
        if (mant_ == 0 || scale_ >= -bits) return *this;
        std::int64_t drop = -bits - scale_;
        cpp_int half = cpp_int(1) << static_cast<unsigned>(drop - 1);
        cpp_int m = (mant_ + half) >> static_cast<unsigned>(drop);
        std::int64_t p = prec_ == kExact ? bits + 1 : std::min(prec_, bits + 1) - 1;
        return from_parts(neg_, m, -bits, p);
    }

    // Three-way compare of stored values.
    friend int cmp(const BigFixed& a, const BigFixed& b) {
        if (a.mant_ == 0 && b.mant_ == 0) return 0;
        if (a.is_zero()) return b.neg_ ? 1 : -1;
        if (b.is_zero()) return a.neg_ ? -1 : 1;
        if (a.neg_ != b.neg_) return a.neg_ ? -1 : 1;
        auto [am, bm, sc] = aligned(a, b);
        (void)sc;
        int c = am == bm ? 0 : (am < bm ? -1 : 1);
        return a.neg_ ? -c : c;
    }

    // True when a < b holds for the true values, not just the stored ones.
    friend bool certified_less(const BigFixed& a, const BigFixed& b) {
        BigFixed d = sub(b, a);
        if (d.is_zero() || d.neg_) return false;
        if (d.exact()) return true;
        return d.magnitude_low_exp() > -d.prec_;  // |d| > error bound
    }

    // Correctly rounded decimal string with `digits` fractional digits.
    std::string to_decimal(std::int64_t digits) const {
        require(digits >= 0, "to_decimal: digits must be >= 0");
        cpp_int p10 = 1;
        for (std::int64_t i = 0; i < digits; ++i) p10 *= 10;
        cpp_int num = mant_ * p10;
        cpp_int t;
        if (scale_ >= 0) {
            t = num << static_cast<unsigned>(scale_);
        } else {
            unsigned drop = static_cast<unsigned>(-scale_);
            cpp_int q = num >> drop;
            cpp_int rem = num - (q << drop);
            cpp_int half = cpp_int(1) << (drop - 1);
            if (rem > half || (rem == half && (q & 1) != 0)) ++q;
            t = q;
        }
        cpp_int ip = t / p10;
        cpp_int fp = t % p10;
        std::string frac = fp.str();
        frac.insert(0, static_cast<size_t>(digits) - frac.size(), '0');
        std::string out = (neg_ && t != 0) ? "-" : "";
        out += ip.str();
        if (digits > 0) out += "." + frac;
        return out;
    }

    double to_double() const {
        if (mant_ == 0) return 0.0;
        std::int64_t top = static_cast<std::int64_t>(boost::multiprecision::msb(mant_));
        std::int64_t drop = top - 62;
        cpp_int m = drop > 0 ? cpp_int(mant_ >> static_cast<unsigned>(drop)) : mant_;
        double v = std::ldexp(static_cast<double>(m.convert_to<std::uint64_t>()),
                              static_cast<int>(scale_ + std::max<std::int64_t>(drop, 0)));
        return neg_ ? -v : v;
    }

private:
    bool neg_ = false;
    cpp_int mant_ = 0;
    std::int64_t scale_ = 0;
    std::int64_t prec_ = kExact;

    void normalize() {
        if (mant_ == 0) {
            neg_ = false;
            scale_ = 0;
            return;
        }
        std::size_t lz = boost::multiprecision::lsb(mant_);
        if (lz > 0) {
            mant_ >>= lz;
            scale_ += static_cast<std::int64_t>(lz);
        }
    }

    static std::int64_t sum_precision(std::int64_t pa, std::int64_t pb) {
        if (pa == kExact && pb == kExact) return kExact;
        if (pa == kExact) return pb;
        if (pb == kExact) return pa;
        return std::min(pa, pb) - 1;
    }

    static std::tuple<cpp_int, cpp_int, std::int64_t> aligned(const BigFixed& a,
                                                              const BigFixed& b) {
        std::int64_t sc = std::min(a.scale_, b.scale_);
        cpp_int am = a.mant_ << static_cast<unsigned>(a.scale_ - sc);
        cpp_int bm = b.mant_ << static_cast<unsigned>(b.scale_ - sc);
        return {std::move(am), std::move(bm), sc};
    }
};

enum class ArithOp { Add, Sub, Mul, Div };

inline BigFixed fx_arith(const BigFixed& a, const BigFixed& b, ArithOp op,
                         std::int64_t div_bits = 128) {
    switch (op) {
        case ArithOp::Add: return add(a, b);
        case ArithOp::Sub: return sub(a, b);
        case ArithOp::Mul: return mul(a, b);
        case ArithOp::Div: return div(a, b, div_bits);
    }
    throw error("fx_arith: bad op");
}

namespace detail {

// arctan(1/q) scaled by 2^work_bits, via the alternating series.
// Floor divisions cost at most one ulp each; callers budget guard bits for that.
inline cpp_int arctan_recip_scaled(std::int64_t q, std::int64_t work_bits) {
    cpp_int pw = (cpp_int(1) << static_cast<unsigned>(work_bits)) / q;
    cpp_int q2 = cpp_int(q) * q;
    cpp_int acc = 0;
    std::int64_t k = 0;
    while (pw != 0) {
        cpp_int term = pw / (2 * k + 1);
        acc += (k % 2 == 0) ? term : -term;
        pw /= q2;
        ++k;
    }
    return acc;
}

}  // namespace detail

// pi via Machin: 16 arctan(1/5) - 4 arctan(1/239), certified to 2^-bits.
inline BigFixed pi(std::int64_t bits) {
    std::int64_t w = bits + 64;
    cpp_int v = 16 * detail::arctan_recip_scaled(5, w) - 4 * detail::arctan_recip_scaled(239, w);
    return BigFixed::from_parts(false, v, -w, bits);
}

// 1 - cos(pi/n) for n >= 2, certified to 2^-bits.
// Alternating Taylor series in theta = pi/n; the first omitted term bounds the tail.
inline BigFixed one_minus_cos_pi_over(const cpp_int& n, std::int64_t bits) {
    require(n >= 2, "one_minus_cos_pi_over: n must be >= 2");
    std::int64_t w = bits + 64;
    BigFixed theta = div(pi(w), BigFixed::from_int(n), w);
    BigFixed x2 = mul(theta, theta).round_to(w);
    BigFixed term = mul(x2, BigFixed::pow2(-1));
    BigFixed acc = term;
    std::int64_t k = 1;
    bool positive = false;  // sign of the next term
    BigFixed cutoff = BigFixed::pow2(-w);
    while (cmp(term.abs(), cutoff) > 0) {
        term = mul(term, x2);
        term = div(term, BigFixed::from_int((2 * k + 1) * (2 * k + 2)), w).round_to(w);
        acc = positive ? add(acc, term) : sub(acc, term);
        positive = !positive;
        ++k;
    }
    return BigFixed::from_parts(acc.negative(), acc.mantissa(), acc.scale(), bits);
}

inline BigFixed one_minus_cos_pi_over(std::int64_t n, std::int64_t bits) {
    return one_minus_cos_pi_over(cpp_int(n), bits);
}

inline std::string fx_to_decimal(const BigFixed& a, std::int64_t digits) {
    return a.to_decimal(digits);
}

}  // namespace tihsim::fx
