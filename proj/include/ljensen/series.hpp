#pragma once

#include <vector>

#include "ljensen/bigreal.hpp"
#include "ljensen/combinatorics.hpp"

namespace ljensen {

/// Dense truncated power series with BigReal coefficients, index = power.
/// Only what the saddle expansion needs: truncated product, exp, log(1+x).
class PowerSeries {
public:
    PowerSeries(size_t order, mpfr_prec_t prec)
        : prec_(prec), c_(order + 1, BigReal(0.0, prec)) {}

    size_t order() const { return c_.size() - 1; }
    mpfr_prec_t prec() const { return prec_; }
    BigReal& operator[](size_t i) { return c_[i]; }
    const BigReal& operator[](size_t i) const { return c_[i]; }

    PowerSeries mul(const PowerSeries& o) const {
        PowerSeries r(order(), prec_);
        for (size_t i = 0; i <= order(); ++i) {
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; i + j <= order(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
        }
        return r;
    }

    /// exp of a series with zero constant term.
    PowerSeries exp_series() const {
        PowerSeries r(order(), prec_), term(order(), prec_);
        r.c_[0] = BigReal(1.0, prec_);
        term.c_[0] = BigReal(1.0, prec_);
        mpz_class kfact = 1;
        for (size_t k = 1; k <= order(); ++k) {
            term = term.mul(*this);
            kfact *= (unsigned long)k;
            BigReal inv = BigReal(1.0, prec_) / to_bigreal(kfact, prec_);
            for (size_t i = 0; i <= order(); ++i) r.c_[i] += term.c_[i] * inv;
        }
        return r;
    }

    /// log(1 + a) of a series a with zero constant term.
    PowerSeries log1p_series() const {
        PowerSeries r(order(), prec_), term(order(), prec_);
        term.c_[0] = BigReal(1.0, prec_);
        for (size_t k = 1; k <= order(); ++k) {
            term = term.mul(*this);
            BigReal w = BigReal((k % 2) ? 1.0 : -1.0, prec_) / (long)k;
            for (size_t i = 0; i <= order(); ++i) r.c_[i] += term.c_[i] * w;
        }
        return r;
    }

    /// The series log(1+lambda) itself.
    static PowerSeries log_one_plus_lambda(size_t order, mpfr_prec_t prec) {
        PowerSeries r(order, prec);
        for (size_t i = 1; i <= order; ++i)
            r[i] = BigReal((i % 2) ? 1.0 : -1.0, prec) / (long)i;
        return r;
    }

private:
    mpfr_prec_t prec_;
    std::vector<BigReal> c_;
};

/// Generalized binomial coefficient binom(x, i) for real x.
inline BigReal real_binomial(const BigReal& x, unsigned long i, mpfr_prec_t prec) {
    BigReal r(1.0, prec);
    for (unsigned long t = 0; t < i; ++t) r *= (x.rounded(prec) - (long)t) / (long)(t + 1);
    return r;
}

} // namespace ljensen
