#pragma once

#include <gmpxx.h>

#include <cstdlib>

#include "ljensen/error.hpp"

namespace ljensen {

/// Fundamental discriminant test: D = 1 mod 4 squarefree, or D = 4m with
/// m = 2,3 mod 4 squarefree. D = 1 (trivial character) is rejected here;
/// the zeta family covers it.
inline bool is_fundamental_discriminant(long D) {
    if (D == 0 || D == 1) return false;
    auto squarefree = [](long v) {
        v = std::labs(v);
        for (long p = 2; p * p <= v; ++p) {
            if (v % (p * p) == 0) return false;
        }
        return true;
    };
    long r = ((D % 4) + 4) % 4;
    if (r == 1) return squarefree(D);
    if (r == 0) {
        long m = D / 4;
        long rm = ((m % 4) + 4) % 4;
        return (rm == 2 || rm == 3) && squarefree(m);
    }
    return false;
}

/// Kronecker symbol (D/n) for a fundamental discriminant D; completely
/// multiplicative in n with period |D|. Backed by GMP.
inline int kronecker_symbol(long D, unsigned long n) {
    if (!is_fundamental_discriminant(D))
        throw NotFundamental("kronecker_symbol: " + std::to_string(D) + " is not a fundamental discriminant");
    mpz_class nn(static_cast<unsigned long>(n));
    return mpz_si_kronecker(D, nn.get_mpz_t());
}

struct DirichletCharacterSpec {
    long D;   // fundamental discriminant
    int nu;   // parity: 0 for even (D > 0), 1 for odd (D < 0)

    explicit DirichletCharacterSpec(long disc) : D(disc), nu(disc < 0 ? 1 : 0) {
        if (!is_fundamental_discriminant(disc))
            throw NotFundamental("DirichletCharacterSpec: " + std::to_string(disc) +
                                 " is not a fundamental discriminant");
    }
    long modulus() const { return std::labs(D); }
};

} // namespace ljensen
