#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tihsim/bigfixed.hpp"

using namespace tihsim;
using namespace tihsim::fx;

TEST_CASE("integer add is exact") {
    BigFixed one = BigFixed::from_int(1);
    BigFixed two = add(one, one);
    REQUIRE(two.exact());
    REQUIRE(cmp(two, BigFixed::from_int(2)) == 0);
}

TEST_CASE("1/3 at 64 bits is within 2^-64") {
    BigFixed q = div(BigFixed::from_int(1), BigFixed::from_int(3), 64);
    REQUIRE(q.precision_bits() >= 62);
    // |q - 1/3| <= 2^-64  <=>  |3*mant*2^scale - 1| <= 3*2^-64
    BigFixed err = sub(mul(BigFixed::from_int(3), q), BigFixed::from_int(1));
    REQUIRE(cmp(err.abs(), BigFixed::pow2(-62)) < 0);
}

TEST_CASE("power-of-two add stays exact") {
    BigFixed a = BigFixed::pow2(-100);
    BigFixed s = add(a, a);
    REQUIRE(s.exact());
    REQUIRE(cmp(s, BigFixed::pow2(-99)) == 0);
}

TEST_CASE("decimal rendering") {
    CHECK(div(BigFixed::from_int(1), BigFixed::from_int(2), 64).to_decimal(3) == "0.500");
    CHECK(div(BigFixed::from_int(1), BigFixed::from_int(3), 64).to_decimal(5) == "0.33333");
    CHECK(BigFixed::pow2(-10).to_decimal(6) == "0.000977");
    CHECK((-BigFixed::pow2(-1)).to_decimal(2) == "-0.50");
}

TEST_CASE("pi matches the usual digits") {
    BigFixed p = pi(256);
    CHECK(p.to_decimal(30) == "3.141592653589793238462643383280");
}

TEST_CASE("one_minus_cos_pi_over at exact angles") {
    // cos(pi/2) = 0
    BigFixed v2 = one_minus_cos_pi_over(2, 128);
    CHECK(cmp(sub(v2, BigFixed::from_int(1)).abs(), BigFixed::pow2(-120)) < 0);
    // cos(pi/3) = 1/2
    BigFixed v3 = one_minus_cos_pi_over(3, 128);
    CHECK(cmp(sub(v3, BigFixed::pow2(-1)).abs(), BigFixed::pow2(-120)) < 0);
}

TEST_CASE("one_minus_cos_pi_over(4) against an independent square root") {
    // 1 - cos(pi/4) = 1 - sqrt(2)/2. Compute sqrt(2) by integer Newton iteration
    // on 2*4^w, entirely outside the BigFixed code paths.
    const std::int64_t w = 200;
    cpp_int target = cpp_int(2) << static_cast<unsigned>(2 * w);
    cpp_int x = cpp_int(1) << static_cast<unsigned>(w + 1);
    while (true) {
        cpp_int nx = (x + target / x) / 2;
        if (nx >= x) break;
        x = nx;
    }
    // 1 - x/2^(w+1), accurate to ~2^-w
    BigFixed expected =
        sub(BigFixed::from_int(1), BigFixed::from_parts(false, x, -(w + 1), w - 4));
    BigFixed got = one_minus_cos_pi_over(4, 160);
    CHECK(cmp(sub(got, expected).abs(), BigFixed::pow2(-150)) < 0);
    CHECK(got.to_decimal(11) == "0.29289321881");
}

TEST_CASE("closed form value used by the CLI example") {
    CHECK(one_minus_cos_pi_over(9, 128).to_decimal(12) == "0.060307379214");
}

TEST_CASE("round trip of random rationals at 128 bits") {
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 200; ++i) {
        std::uint64_t p = rng();
        std::uint64_t q = (rng() & 0xffffffffULL) + 1;
        BigFixed v = div(BigFixed::from_int(cpp_int(p)), BigFixed::from_int(cpp_int(q)), 128);
        // |v - p/q| <= 2^-120  <=>  |q*v - p| <= q * 2^-120 <= 2^-88
        BigFixed err = sub(mul(BigFixed::from_int(cpp_int(q)), v), BigFixed::from_int(cpp_int(p)));
        REQUIRE(cmp(err.abs(), BigFixed::pow2(-88)) < 0);
    }
}

TEST_CASE("one_minus_cos_pi_over strictly decreasing in n") {
    std::vector<std::int64_t> ns = {2, 3, 4, 5, 7, 11, 40, 100, 1000, 12345, 999999, 1000000};
    for (size_t i = 0; i + 1 < ns.size(); ++i) {
        BigFixed a = one_minus_cos_pi_over(ns[i], 96);
        BigFixed b = one_minus_cos_pi_over(ns[i + 1], 96);
        REQUIRE(certified_less(b, a));
    }
}

TEST_CASE("recomputing at higher precision moves the value only within the coarse bound") {
    for (std::int64_t n : {7, 9, 361, 5000}) {
        BigFixed lo = one_minus_cos_pi_over(n, 64);
        BigFixed hi = one_minus_cos_pi_over(n, 512);
        REQUIRE(cmp(sub(hi, lo).abs(), BigFixed::pow2(-63)) <= 0);
    }
}

TEST_CASE("division by zero and unseparated divisors are rejected") {
    BigFixed z = BigFixed::from_int(0);
    REQUIRE_THROWS_AS(div(BigFixed::from_int(1), z, 64), tihsim::error);
    // Stored value 2^-100 with error bound 2^-10: not certifiably nonzero.
    BigFixed fuzzy = BigFixed::from_parts(false, 1, -100, 10);
    REQUIRE_THROWS_AS(div(BigFixed::from_int(1), fuzzy, 64), tihsim::error);
}

TEST_CASE("precision bookkeeping shrinks under subtraction of near values") {
    BigFixed a = one_minus_cos_pi_over(9, 128);
    BigFixed b = one_minus_cos_pi_over(10, 128);
    BigFixed d = sub(a, b);
    REQUIRE(d.precision_bits() <= 128);
    REQUIRE(d.precision_bits() >= 120);
}
