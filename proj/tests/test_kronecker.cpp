#include <catch2/catch.hpp>

#include "ljensen/kronecker.hpp"

using namespace ljensen;

TEST_CASE("fundamental discriminant recognition") {
    for (long d : {-3L, -4L, 5L, 8L, -8L, 12L, -7L, -11L, -23L, 13L, -163L})
        REQUIRE(is_fundamental_discriminant(d));
    for (long d : {0L, 1L, -5L, 2L, 3L, -9L, 16L, 25L, -12L, 45L})
        REQUIRE(!is_fundamental_discriminant(d));
}

TEST_CASE("chi_-4 values") {
    REQUIRE(kronecker_symbol(-4, 1) == 1);
    REQUIRE(kronecker_symbol(-4, 3) == -1);
    REQUIRE(kronecker_symbol(-4, 2) == 0);
    REQUIRE(kronecker_symbol(-4, 5) == 1);
    REQUIRE(kronecker_symbol(5, 4) == 1);  // 4 = 2^2 is a square mod 5
    REQUIRE_THROWS_AS(kronecker_symbol(-5, 3), NotFundamental);
}

TEST_CASE("complete multiplicativity") {
    for (long D : {-4L, -3L, 5L, 8L, -8L, 12L}) {
        for (unsigned long m = 1; m <= 200; ++m)
            for (unsigned long n = m; n <= 200; n += 7)  // strided full check is below for -4
                REQUIRE(kronecker_symbol(D, m * n) ==
                        kronecker_symbol(D, m) * kronecker_symbol(D, n));
    }
    // exhaustive for one discriminant
    for (unsigned long m = 1; m <= 200; ++m)
        for (unsigned long n = 1; n <= 200; ++n)
            REQUIRE(kronecker_symbol(-4, m * n) ==
                    kronecker_symbol(-4, m) * kronecker_symbol(-4, n));
}

TEST_CASE("periodicity with period |D|") {
    for (long D : {-4L, -3L, 5L, 8L, -8L, 12L}) {
        unsigned long per = (unsigned long)(D < 0 ? -D : D);
        for (unsigned long n = 0; n <= 200; ++n)
            REQUIRE(kronecker_symbol(D, n) == kronecker_symbol(D, n + per));
    }
}

TEST_CASE("character spec parity matches discriminant sign") {
    DirichletCharacterSpec odd(-4);
    REQUIRE(odd.nu == 1);
    REQUIRE(odd.modulus() == 4);
    DirichletCharacterSpec even(5);
    REQUIRE(even.nu == 0);
    REQUIRE_THROWS_AS(DirichletCharacterSpec(-5), NotFundamental);
}
