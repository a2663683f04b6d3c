#include <catch2/catch.hpp>

#include "ljensen/bigreal.hpp"
#include "ljensen/combinatorics.hpp"
#include "ljensen/precision.hpp"

using namespace ljensen;

TEST_CASE("arithmetic and precision carry") {
    BigReal a(2.0, 128), b(3.0, 256);
    BigReal c = a * b;
    REQUIRE(c.prec() == 256);
    REQUIRE(c == BigReal(6.0, 64));
    REQUIRE((a / b).to_double() == Approx(2.0 / 3.0));
}

TEST_CASE("huge exponents survive") {
    // magnitudes far below 1e-400000 must not flush to zero
    BigReal tiny = exp(BigReal(-1.0e6, 128));
    REQUIRE(!tiny.is_zero());
    REQUIRE(tiny > 0);
    BigReal back = log(tiny);
    REQUIRE(abs(back + 1.0e6) < BigReal(1e-20, 128));
}

TEST_CASE("hex round trip is exact") {
    BigReal x = const_pi(192) / 7;
    BigReal y = BigReal::parse_hex(x.hex(), 192);
    REQUIRE(x == y);

    BigReal z = -exp(BigReal(-123456.0, 160));
    REQUIRE(BigReal::parse_hex(z.hex(), 160) == z);
}

TEST_CASE("deterministic for fixed precision") {
    auto run = [] {
        BigReal s(0.0, 200);
        for (long i = 1; i <= 50; ++i) s += log(BigReal((double)i, 200) + const_pi(200));
        return s.hex();
    };
    REQUIRE(run() == run());
}

TEST_CASE("string formatting") {
    BigReal x(0.5, 96);
    REQUIRE(x.str(5).substr(0, 6) == "5.0000");
}

TEST_CASE("precision context validation") {
    REQUIRE_THROWS_AS(PrecisionContext(32), InvalidParams);
    REQUIRE_THROWS_AS(PrecisionContext(128, 8), InvalidParams);
    REQUIRE(PrecisionContext::from_digits(60).working_bits >= 200);
    REQUIRE_THROWS_AS(PrecisionContext::from_digits(5), InvalidParams);
}

TEST_CASE("exact combinatorics") {
    REQUIRE(factorial(10) == 3628800);
    REQUIRE(binomial(10, 4) == 210);
    REQUIRE(odd_double_factorial(3) == 15);  // 1*3*5
    // 10!/20! = 1/(11*...*20)
    BigReal r = factorial_ratio(10, 20, 256);
    BigReal direct = to_bigreal(factorial(10), 256) / to_bigreal(factorial(20), 256);
    REQUIRE(abs(r - direct) < abs(direct) * pow2(-240, 256));
}
