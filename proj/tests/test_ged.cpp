#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tihsim/ged.hpp"

using namespace tihsim;
using namespace tihsim::ged;
using fx::BigFixed;

namespace {

GedSeries series_for(const std::string& name, std::int64_t bits = 320, std::int64_t kmax = 85) {
    GedSeries s;
    s.instance = oracle::toy_instance(name);
    s.precision_bits = bits;
    s.k_max = kmax;
    return s;
}

}  // namespace

TEST_CASE("series terms vanish off the squares and on the insufficiency set") {
    GedSeries s = series_for("toy-m0");
    CHECK(lambda0_4k(s, 2).is_zero());
    CHECK(lambda0_4k(s, 3).is_zero());
    CHECK_FALSE(lambda0_4k(s, 4).is_zero());
    s.insufficient.insert(4);
    CHECK(lambda0_4k(s, 4).is_zero());
}

TEST_CASE("first square matches the hand-composed closed form") {
    GedSeries s = series_for("toy-m0");
    // timer 4, chain 4: cycle (2*4+1) * p(4) = 9 * 40 = 360
    BigFixed v = lambda0_4k(s, 1, 160);
    BigFixed want = fx::one_minus_cos_pi_over(361, 160);
    CHECK(cmp(sub(v, want).abs(), BigFixed::pow2(-150)) < 0);
}

TEST_CASE("series sums only its nonzero terms") {
    GedSeries s = series_for("toy-m0", 96, 23);
    // all lambda zero: empty instance contribution
    GedSeries zero = s;
    for (std::int64_t k = 1; k <= zero.k_max; ++k) zero.insufficient.insert(k);
    CHECK(alpha0(zero).is_zero());

    // single nonzero term at k = 1
    GedSeries one = s;
    for (std::int64_t k = 2; k <= one.k_max; ++k) one.insufficient.insert(k);
    BigFixed a = alpha0(one);
    BigFixed want = mul(lambda0_4k(s, 1, 128), BigFixed::pow2(-6));  // / 4^3
    CHECK(cmp(sub(a, want).abs(), BigFixed::pow2(-90)) < 0);
}

TEST_CASE("truncation must cover the requested precision") {
    GedSeries s = series_for("toy-m0", 256, 10);
    REQUIRE_THROWS_AS(alpha0(s), tihsim::error);
}

TEST_CASE("extending the truncation does not move the value") {
    GedSeries a = series_for("toy-m1", 128, 31);
    GedSeries b = series_for("toy-m1", 128, 40);
    BigFixed va = alpha0(a);
    BigFixed vb = alpha0(b);
    CHECK(cmp(sub(va, vb).abs(), BigFixed::pow2(-120)) < 0);
}

TEST_CASE("extraction round trips every toy instance") {
    for (const char* name : {"toy-m0", "toy-m1", "toy-m2"}) {
        GedSeries s = series_for(name);
        BigFixed a = alpha0(s);
        for (std::int64_t x = 1; x <= 3; ++x) {
            ExtractResult r = extract_f(a, x, s);
            INFO(name << " x=" << x << " diag=" << r.diagnostic);
            REQUIRE(r.ok);
            std::string y = s.instance.correct_answers(x);
            CHECK(r.f == s.instance.f_of(x, y));
            CHECK(r.timers.back() == oracle::t_of_xy(s.instance, x, y));
        }
    }
}

TEST_CASE("expected toy values are recovered exactly") {
    GedSeries s = series_for("toy-m2");
    BigFixed a = alpha0(s);
    CHECK(extract_f(a, 1, s).f == 0);
    CHECK(extract_f(a, 2, s).f == 3);
    CHECK(extract_f(a, 3, s).f == 1);
}

TEST_CASE("extraction survives perturbations within half the precision budget") {
    GedSeries s = series_for("toy-m1");
    BigFixed a = alpha0(s);
    std::mt19937_64 rng(23);
    for (std::int64_t x = 1; x <= 3; ++x) {
        std::int64_t q = q_bits_for(s.instance, x);
        ExtractResult base = extract_f(a, x, s);
        REQUIRE(base.ok);
        for (int trial = 0; trial < 4; ++trial) {
            cpp_int mant = cpp_int(rng() | 1);
            BigFixed eps = BigFixed::from_parts(rng() & 1, mant, -q - 65, fx::kExact);
            // |eps| < 2^-(q+1)
            ExtractResult r = extract_f(add(a, eps), x, s);
            REQUIRE(r.ok);
            CHECK(r.f == base.f);
        }
    }
}

TEST_CASE("insufficiency marking is honored") {
    GedSeries s = series_for("toy-m1");
    s.insufficient.insert(1);  // 1 = 1^2
    BigFixed a = alpha0(s);
    ExtractResult r1 = extract_f(a, 1, s);
    CHECK_FALSE(r1.ok);
    CHECK(r1.insufficient_k);
    ExtractResult r2 = extract_f(a, 2, s);
    REQUIRE(r2.ok);
    CHECK(r2.f == s.instance.f_of(2, s.instance.correct_answers(2)));
}

TEST_CASE("bit budget stays within the declared slack") {
    GedSeries s = series_for("toy-m0");
    BigFixed a = alpha0(s);
    ExtractResult r = extract_f(a, 3, s);
    REQUIRE(r.ok);
    CHECK(r.precision_highwater <= r.q_bits + 64);
}

TEST_CASE("binary search pins exact dyadic intervals") {
    PromiseOracle zero{0, 1, PromiseOracle::Adversary::Accept};
    SearchResult r = binary_search(zero, 10);
    CHECK(r.l_num == 0);
    CHECK(cmp(r.u, BigFixed::pow2(-10)) == 0);

    for (auto adv : {PromiseOracle::Adversary::Accept, PromiseOracle::Adversary::Reject}) {
        PromiseOracle third{1, 3, adv};
        SearchResult s = binary_search(third, 20);
        CHECK(cmp(sub(s.u, s.l), BigFixed::pow2(-20)) == 0);
        CHECK(third.contains(s.l_num, s.u_num, s.rounds + 1));
    }
}

TEST_CASE("binary search over random rationals") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        cpp_int den = cpp_int(rng() % 1000000 + 1);
        cpp_int num = cpp_int(rng()) % (den + 1);
        for (auto adv : {PromiseOracle::Adversary::Accept, PromiseOracle::Adversary::Reject}) {
            PromiseOracle o{num, den, adv};
            SearchResult r = binary_search(o, 30);
            REQUIRE(r.u_num - r.l_num == cpp_int(1) << 1);  // 2^-30 on the 2^-31 grid
            REQUIRE(o.contains(r.l_num, r.u_num, r.rounds + 1));
        }
    }
}

TEST_CASE("a defective oracle is caught") {
    // accepts one threshold and rejects a strictly larger one
    struct Liar {
        mutable int calls = 0;
        bool accept(const cpp_int&, std::int64_t, std::int64_t) const { return calls++ == 0; }
    } liar;
    REQUIRE_THROWS_AS(binary_search(liar, 8), tihsim::error);
}

TEST_CASE("decay of the square contributions") {
    for (const char* name : {"toy-m0", "toy-m1", "toy-m2"}) {
        DecayReport rep = decay_checks(oracle::toy_instance(name), 3);
        INFO(name);
        CHECK(rep.all_ok);
        for (const DecayRow& row : rep.rows) {
            CHECK(row.timer_bounded);
            CHECK(row.halves);
            CHECK(row.l_ratio >= 2.0);
            CHECK(row.n_ratio >= row.timer);
        }
    }
}
