#pragma once

#include <gmpxx.h>

#include "ljensen/bigreal.hpp"

namespace ljensen {

inline mpz_class factorial(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// (2i-1)!! = 1*3*5*...*(2i-1)
inline mpz_class odd_double_factorial(unsigned long i) {
    mpz_class r = 1;
    for (unsigned long t = 3; t + 1 <= 2 * i; t += 2) r *= t;
    return r;
}

/// n!/m! formed over exact integers and converted to BigReal last.
inline BigReal factorial_ratio(unsigned long n, unsigned long m, mpfr_prec_t prec) {
    if (n >= m) {
        mpz_class p = 1;
        for (unsigned long i = m + 1; i <= n; ++i) p *= i;
        return BigReal::from_mpz(p.get_mpz_t(), prec);
    }
    mpz_class p = 1;
    for (unsigned long i = n + 1; i <= m; ++i) p *= i;
    return BigReal(1L, prec) / BigReal::from_mpz(p.get_mpz_t(), prec);
}

inline BigReal to_bigreal(const mpz_class& z, mpfr_prec_t prec) {
    return BigReal::from_mpz(z.get_mpz_t(), prec);
}
inline BigReal to_bigreal(const mpq_class& q, mpfr_prec_t prec) {
    return BigReal::from_mpq(q.get_mpq_t(), prec);
}

} // namespace ljensen
