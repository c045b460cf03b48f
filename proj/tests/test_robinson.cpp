#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "tihsim/ged.hpp"
#include "tihsim/robinson.hpp"

using namespace tihsim;
using namespace tihsim::robinson;
using fx::BigFixed;

TEST_CASE("a 4-grid carries exactly one size-4 square") {
    SquareHierarchy h = hierarchy(4);
    REQUIRE(h.levels.size() == 1);
    CHECK(h.levels[0].count() == 1);
    CHECK(h.levels[0].top_edges()[0].row == 0);
    CHECK(h.levels[0].top_edges()[0].len == 4);
}

TEST_CASE("counts sit inside the floor interval") {
    for (std::int64_t m = 1; m <= 8; ++m) {
        std::int64_t grid = std::int64_t(1) << (2 * m);  // 4^m
        SquareHierarchy h = hierarchy(grid);
        for (const Level& lv : h.levels) {
            if (lv.k > interval_depth(grid)) continue;
            std::int64_t q = grid >> (2 * lv.k + 1);
            INFO("m=" << m << " k=" << lv.k);
            REQUIRE(lv.count() >= q * (q - 1));
            REQUIRE(lv.count() <= q * (q + 1));
        }
    }
}

TEST_CASE("densities approach one per 4^(2k+1) cells") {
    for (std::int64_t k = 1; k <= 3; ++k) {
        std::int64_t grid = std::int64_t(1) << (2 * 7);  // 4^7
        SquareHierarchy h = hierarchy(grid);
        double density = double(h.levels[size_t(k - 1)].count()) / double(grid) / double(grid);
        double want = 1.0 / double(std::int64_t(1) << (4 * k + 2));
        REQUIRE(density == Catch::Approx(want).epsilon(0.01));
    }
}

TEST_CASE("same-size top edges are disjoint and parents hold four children") {
    SquareHierarchy h = hierarchy(256);
    for (const Level& lv : h.levels) {
        std::set<std::pair<std::int64_t, std::int64_t>> rowspan;
        for (const Segment& s : lv.top_edges()) {
            for (std::int64_t c = s.col; c < s.col + s.len; ++c)
                REQUIRE(rowspan.insert({s.row, c}).second);
        }
    }
    for (size_t i = 0; i + 1 < h.levels.size(); ++i) {
        const Level& child = h.levels[i];
        const Level& parent = h.levels[i + 1];
        for (const Segment& p : parent.top_edges()) {
            int inside = 0;
            for (const Segment& c : child.top_edges()) {
                if (c.row >= p.row && c.row + child.size <= p.row + parent.size &&
                    c.col >= p.col && c.col + c.len <= p.col + p.len)
                    ++inside;
            }
            REQUIRE(inside == 4);
        }
    }
}

TEST_CASE("zero energies give a zero interval") {
    std::map<std::int64_t, BigFixed> lambdas;
    for (std::int64_t k = 1; k <= interval_depth(256); ++k)
        lambdas[k] = BigFixed::from_int(0);
    EnergyInterval iv = energy_interval(256, lambdas);
    CHECK(iv.lo.is_zero());
    CHECK(iv.hi.is_zero());
}

TEST_CASE("a single contributing size gives the expected width") {
    std::int64_t grid = 1024;
    std::map<std::int64_t, BigFixed> lambdas;
    for (std::int64_t k = 1; k <= interval_depth(grid); ++k) lambdas[k] = BigFixed::from_int(0);
    BigFixed lam = fx::one_minus_cos_pi_over(361, 96);
    lambdas[2] = lam;
    EnergyInterval iv = energy_interval(grid, lambdas);
    std::int64_t q = grid >> 5;
    BigFixed width = sub(iv.hi, iv.lo);
    CHECK(cmp(width, mul(BigFixed::from_int(2 * q), lam)) == 0);
}

TEST_CASE("missing energies are reported") {
    std::map<std::int64_t, BigFixed> lambdas;
    REQUIRE_THROWS_AS(energy_interval(256, lambdas), tihsim::error);
}

TEST_CASE("interval brackets the truncated series with a shrinking gap") {
    ged::GedSeries series;
    series.instance = oracle::toy_m1();
    series.precision_bits = 192;

    BigFixed prev_gap;
    bool have_prev = false;
    for (std::int64_t m = 2; m <= 8; ++m) {
        std::int64_t grid = std::int64_t(1) << (2 * m);
        std::int64_t depth = interval_depth(grid);
        std::map<std::int64_t, BigFixed> lambdas;
        BigFixed truncated = BigFixed::from_int(0);
        for (std::int64_t k = 1; k <= depth; ++k) {
            lambdas[k] = ged::lambda0_4k(series, k, 192);
            truncated = add(truncated, mul(lambdas[k], BigFixed::pow2(-(4 * k + 2))));
        }
        EnergyInterval iv = energy_interval(grid, lambdas);
        BigFixed scale = BigFixed::pow2(-4 * m);  // 1 / grid^2
        BigFixed lo = mul(iv.lo, scale), hi = mul(iv.hi, scale);
        INFO("m=" << m);
        REQUIRE(cmp(lo, truncated) <= 0);
        REQUIRE(cmp(truncated, hi) <= 0);
        BigFixed gap = sub(hi, lo);
        if (have_prev) REQUIRE(certified_less(gap, prev_gap));
        prev_gap = gap;
        have_prev = true;
    }
}

TEST_CASE("small grids render") {
    std::string art = ascii_render(hierarchy(16));
    CHECK(art.find('1') != std::string::npos);
    CHECK(art.find('2') != std::string::npos);
}
