#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tihsim/bigfixed.hpp"
#include "tihsim/common.hpp"

namespace tihsim::spectral {

using fx::BigFixed;

enum class Base { Cycle, Path };

struct Penalty {
    std::int64_t index;
    double weight;  // 1/2 or 1
};

struct PeriodicSpec {
    std::int64_t r, s, l;  // +1 on the diagonal at l + k*s, k = 0..r-1
};

struct MatrixSpec {
    Base base = Base::Cycle;
    std::int64_t size = 0;
    std::vector<Penalty> penalties;
    std::optional<PeriodicSpec> periodic;
};

inline MatrixSpec cycle_with_penalties(std::int64_t L, std::vector<Penalty> pens) {
    return {Base::Cycle, L, std::move(pens), std::nullopt};
}

inline MatrixSpec cycle_with_periodic(std::int64_t r, std::int64_t s, std::int64_t l) {
    MatrixSpec m;
    m.base = Base::Cycle;
    m.size = r * s;
    m.periodic = PeriodicSpec{r, s, l};
    return m;
}

// Half the graph Laplacian of the base graph plus the requested diagonal terms.
inline Eigen::MatrixXd assemble(const MatrixSpec& spec, std::int64_t dense_budget = 5000) {
    std::int64_t L = spec.size;
    require(L >= 1, "assemble: size must be positive");
    require(L <= dense_budget, "assemble: size exceeds the dense budget");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(L, L);
    if (L > 1) {
        for (std::int64_t i = 0; i + 1 < L; ++i) {
            m(i, i) += 0.5;
            m(i + 1, i + 1) += 0.5;
            m(i, i + 1) -= 0.5;
            m(i + 1, i) -= 0.5;
        }
        if (spec.base == Base::Cycle && L >= 3) {
            m(L - 1, L - 1) += 0.5;
            m(0, 0) += 0.5;
            m(L - 1, 0) -= 0.5;
            m(0, L - 1) -= 0.5;
        }
    }
    for (const Penalty& p : spec.penalties) {
        require(p.index >= 0 && p.index < L, "assemble: penalty index out of range");
        m(p.index, p.index) += p.weight;
    }
    if (spec.periodic) {
        const PeriodicSpec& d = *spec.periodic;
        require(d.r >= 1 && d.s >= 1 && d.r * d.s == L, "assemble: periodic spec needs L = r*s");
        require(d.l >= 0 && d.l < d.s, "assemble: periodic offset out of range");
        for (std::int64_t k = 0; k < d.r; ++k) m(d.l + k * d.s, d.l + k * d.s) += 1.0;
    }
    return m;
}

namespace detail {

// Eigenvalues of a symmetric tridiagonal matrix strictly below x, by Sturm count.
inline std::int64_t count_below(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double x) {
    std::int64_t n = d.size();
    std::int64_t cnt = 0;
    double q = d(0) - x;
    if (q < 0) ++cnt;
    for (std::int64_t i = 1; i < n; ++i) {
        double denom = q;
        if (denom == 0.0) denom = 1e-300;
        q = d(i) - x - e(i - 1) * e(i - 1) / denom;
        if (q < 0) ++cnt;
    }
    return cnt;
}

}  // namespace detail

// Smallest eigenvalue via Householder tridiagonalization and Sturm bisection.
// Deterministic; the returned value sits in a bracket of width <= tol.
inline double smallest_eig(const Eigen::MatrixXd& m, double tol = 1e-12) {
    require(m.rows() == m.cols(), "smallest_eig: matrix must be square");
    require((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0,
            "smallest_eig: matrix must be symmetric");
    require(tol > 0, "smallest_eig: tol must be positive");
    std::int64_t n = m.rows();
    if (n == 1) return m(0, 0);

    Eigen::Tridiagonalization<Eigen::MatrixXd> tri(m);
    Eigen::VectorXd d = tri.diagonal();
    Eigen::VectorXd e = tri.subDiagonal();

    // Gershgorin bracket
    double lo = d(0), hi = d(0);
    for (std::int64_t i = 0; i < n; ++i) {
        double r = 0;
        if (i > 0) r += std::abs(e(i - 1));
        if (i + 1 < n) r += std::abs(e(i));
        lo = std::min(lo, d(i) - r);
        hi = std::max(hi, d(i) + r);
    }
    for (int it = 0; it < 300 && hi - lo > tol; ++it) {
        double mid = lo + (hi - lo) / 2;
        if (detail::count_below(d, e, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return lo + (hi - lo) / 2;
}

inline std::vector<double> full_spectrum(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
    std::sort(out.begin(), out.end());
    return out;
}

// Smallest eigenvalue of the L-cycle with two adjacent half penalties: 1 - cos(pi/(L+1)).
inline BigFixed cycle_two_halves_exact(const cpp_int& L, std::int64_t bits) {
    require(L >= 1, "cycle_two_halves_exact: L must be positive");
    return fx::one_minus_cos_pi_over(L + 1, bits);
}

// Floor for the L=r*s cycle with a period-s unit penalty: (1/8)(1 - cos(pi/(2s+1))).
inline BigFixed periodic_lower_bound(const cpp_int& s, std::int64_t bits) {
    require(s >= 1, "periodic_lower_bound: s must be positive");
    return mul(fx::one_minus_cos_pi_over(2 * s + 1, bits), BigFixed::pow2(-3));
}

struct CosGapResult {
    BigFixed bound;   // 1/(y^2 x^4)
    BigFixed actual;  // |cos(pi/(yx+1)) - cos(pi/(yx'+1))|
    bool holds;       // actual >= bound, certified
};

inline CosGapResult cos_gap(const cpp_int& x, const cpp_int& xp, const cpp_int& y,
                            std::int64_t bits) {
    require(x > 5 && xp > 5 && y > 5, "cos_gap: arguments must exceed 5");
    require(x != xp, "cos_gap: x and x' must differ");
    CosGapResult res;
    res.bound = div(BigFixed::from_int(1), BigFixed::from_int(y * y * x * x * x * x), bits);
    BigFixed a = fx::one_minus_cos_pi_over(y * x + 1, bits);
    BigFixed b = fx::one_minus_cos_pi_over(y * xp + 1, bits);
    res.actual = sub(a, b).abs();
    res.holds = certified_less(res.bound, res.actual) || cmp(res.bound, res.actual) == 0;
    return res;
}

struct BoundCompareResult {
    bool holds;            // strict inequality certified at working precision
    bool hypothesis_met;   // T >= 4, the regime the claim speaks about
    BigFixed lhs, rhs;
};

// 1 - cos(pi/((2T+1)p(N)+1))  <  (1/8)(1 - cos(pi/(2p(N)+1)))
inline BoundCompareResult bound_compare(const cpp_int& n, const cpp_int& timer,
                                        std::int64_t bits = 192) {
    BoundCompareResult res;
    cpp_int p = clock_period(n);
    res.lhs = fx::one_minus_cos_pi_over((2 * timer + 1) * p + 1, bits);
    res.rhs = periodic_lower_bound(p, bits);
    res.holds = certified_less(res.lhs, res.rhs);
    res.hypothesis_met = timer >= 4;
    return res;
}

// Numeric check of the Fourier-block identity <f_k| D_{r,s,0} |f_j> = [k = j mod r]/s.
inline double fourier_block_max_error(std::int64_t r, std::int64_t s) {
    std::int64_t L = r * s;
    double maxerr = 0;
    for (std::int64_t k = 0; k < L; ++k) {
        for (std::int64_t j = 0; j < L; ++j) {
            std::complex<double> acc = 0;
            for (std::int64_t m = 0; m < r; ++m) {
                std::int64_t idx = m * s;  // diagonal support of D_{r,s,0}
                double ang = 2.0 * M_PI * double(idx) * double(j - k) / double(L);
                acc += std::complex<double>(std::cos(ang), std::sin(ang));
            }
            acc /= double(L);
            double want = (k % r == j % r) ? 1.0 / double(s) : 0.0;
            maxerr = std::max(maxerr, std::abs(acc - want));
        }
    }
    return maxerr;
}

}  // namespace tihsim::spectral
