#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "ljensen/error.hpp"

namespace ljensen {

/// q-expansion of prod_d prod_{n>=1} (1 - q^(d n))^(e_d), truncated after
/// q^(M-1) and relabeled a(1..M) so that a(1) = 1 (the fractional leading
/// power of the eta product is dropped). Exact integer arithmetic; each
/// Euler factor enters through its pentagonal-number series.
inline std::vector<mpz_class> eta_product(const std::vector<std::pair<long, long>>& factors,
                                          long count, long digit_budget = 100000) {
    if (count < 1) throw InvalidParams("eta_product: count must be >= 1");
    const long ord = count - 1;  // highest retained q power
    std::vector<mpz_class> acc(ord + 1);
    acc[0] = 1;

    for (auto [d, e] : factors) {
        if (d < 1 || e < 1) throw InvalidParams("eta_product: factors must be positive");
        // sparse pentagonal series of prod (1 - q^(d n))
        std::vector<std::pair<long, int>> penta;  // (exponent, +-1)
        penta.emplace_back(0, 1);
        for (long k = 1;; ++k) {
            long e1 = d * k * (3 * k - 1) / 2;
            long e2 = d * k * (3 * k + 1) / 2;
            if (e1 > ord && e2 > ord) break;
            int sgn = (k % 2) ? -1 : 1;
            if (e1 <= ord) penta.emplace_back(e1, sgn);
            if (e2 <= ord) penta.emplace_back(e2, sgn);
        }
        for (long rep = 0; rep < e; ++rep) {
            std::vector<mpz_class> next(ord + 1);
            for (long i = 0; i <= ord; ++i) {
                if (acc[i] == 0) continue;
                for (auto [pe, sgn] : penta) {
                    if (i + pe > ord) break;
                    if (sgn > 0) next[i + pe] += acc[i];
                    else next[i + pe] -= acc[i];
                }
            }
            acc = std::move(next);
        }
    }
    for (const auto& z : acc)
        if ((long)mpz_sizeinbase(z.get_mpz_t(), 10) > digit_budget)
            throw Overflow("eta_product: coefficient exceeds digit budget");
    return acc;  // acc[i] = a(i+1)
}

} // namespace ljensen
