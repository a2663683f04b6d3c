#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>

#include "ljensen/error.hpp"
#include "ljensen/precision.hpp"

namespace ljensen {

/// Arbitrary-precision real number. Value semantics over mpfr_t; every value
/// carries its own precision and binary operations round to the larger of the
/// two operand precisions (round-to-nearest). The default MPFR exponent range
/// (|exp| < 2^62 on 64-bit) comfortably covers magnitudes like 1e-400000, so
/// no underflow handling is needed anywhere in this library.
class BigReal {
public:
    BigReal() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
    explicit BigReal(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigReal(double d, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, d, MPFR_RNDN); }
    BigReal(long i, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, i, MPFR_RNDN); }

    BigReal(const BigReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigReal(BigReal&& o) noexcept { mpfr_init2(v_, 64); mpfr_swap(v_, o.v_); }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~BigReal() { mpfr_clear(v_); }

    static BigReal from_string(const std::string& s, mpfr_prec_t prec, int base = 10) {
        BigReal r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), base, MPFR_RNDN) != 0)
            throw InvalidParams("BigReal: unparsable literal '" + s + "'");
        return r;
    }
    static BigReal from_mpz(const mpz_t z, mpfr_prec_t prec) {
        BigReal r(prec); mpfr_set_z(r.v_, z, MPFR_RNDN); return r;
    }
    static BigReal from_mpq(const mpq_t q, mpfr_prec_t prec) {
        BigReal r(prec); mpfr_set_q(r.v_, q, MPFR_RNDN); return r;
    }
    /// Exact dyadic value m * 2^e.
    static BigReal ldexp(long m, long e, mpfr_prec_t prec) {
        BigReal r(prec); mpfr_set_si_2exp(r.v_, m, e, MPFR_RNDN); return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    /// Round a copy to a new precision.
    BigReal rounded(mpfr_prec_t prec) const {
        BigReal r(prec); mpfr_set(r.v_, v_, MPFR_RNDN); return r;
    }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    /// Exponent e with |x| in [2^(e-1), 2^e); only meaningful for nonzero finite x.
    long exponent() const { return static_cast<long>(mpfr_get_exp(v_)); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    friend BigReal operator+(const BigReal& a, const BigReal& b) { return bin(mpfr_add, a, b); }
    friend BigReal operator-(const BigReal& a, const BigReal& b) { return bin(mpfr_sub, a, b); }
    friend BigReal operator*(const BigReal& a, const BigReal& b) { return bin(mpfr_mul, a, b); }
    friend BigReal operator/(const BigReal& a, const BigReal& b) { return bin(mpfr_div, a, b); }
    BigReal operator-() const { BigReal r(prec()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }

    BigReal& operator+=(const BigReal& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigReal& operator-=(const BigReal& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigReal& operator*=(const BigReal& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigReal& operator/=(const BigReal& b) { mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigReal& operator+=(long b) { mpfr_add_si(v_, v_, b, MPFR_RNDN); return *this; }
    BigReal& operator-=(long b) { mpfr_sub_si(v_, v_, b, MPFR_RNDN); return *this; }
    BigReal& operator*=(long b) { mpfr_mul_si(v_, v_, b, MPFR_RNDN); return *this; }
    BigReal& operator/=(long b) { mpfr_div_si(v_, v_, b, MPFR_RNDN); return *this; }

    friend BigReal operator+(const BigReal& a, long b) { BigReal r(a.prec()); mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend BigReal operator-(const BigReal& a, long b) { BigReal r(a.prec()); mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend BigReal operator+(long a, const BigReal& b) { return b + a; }
    friend BigReal operator-(long a, const BigReal& b) { BigReal r(b.prec()); mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN); return r; }
    friend BigReal operator*(const BigReal& a, long b) { BigReal r(a.prec()); mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend BigReal operator*(long a, const BigReal& b) { return b * a; }
    friend BigReal operator/(const BigReal& a, long b) { BigReal r(a.prec()); mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend BigReal operator/(long a, const BigReal& b) { BigReal r(b.prec()); mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN); return r; }

    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const BigReal& a, const BigReal& b) { return !(a == b); }
    friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator<(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator<=(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>=(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
    friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

    /// Scientific-notation decimal string, `digits` significant digits.
    std::string str(int digits = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Re", digits - 1, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }
    /// Hex-float form ("0x1.8p+1"); exact round-trip through parse_hex.
    std::string hex() const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%Ra", v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }
    static BigReal parse_hex(const std::string& s, mpfr_prec_t prec) {
        BigReal r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 0, MPFR_RNDN) != 0)
            throw InvalidParams("BigReal: bad hex literal '" + s + "'");
        return r;
    }

private:
    using mpfr_bin_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    static BigReal bin(mpfr_bin_fn fn, const BigReal& a, const BigReal& b) {
        BigReal r(std::max(a.prec(), b.prec()));
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    mpfr_t v_;
};

#define LJENSEN_UNARY(name, mpfr_fn)                       \
    inline BigReal name(const BigReal& x) {                \
        BigReal r(x.prec());                               \
        mpfr_fn(r.raw(), x.raw(), MPFR_RNDN);              \
        return r;                                          \
    }
LJENSEN_UNARY(exp, mpfr_exp)
LJENSEN_UNARY(log, mpfr_log)
LJENSEN_UNARY(sqrt, mpfr_sqrt)
LJENSEN_UNARY(abs, mpfr_abs)
LJENSEN_UNARY(gamma_fn, mpfr_gamma)
LJENSEN_UNARY(digamma_fn, mpfr_digamma)
#undef LJENSEN_UNARY

inline BigReal floor(const BigReal& x) {
    BigReal r(x.prec());
    mpfr_floor(r.raw(), x.raw());
    return r;
}
inline BigReal ceil(const BigReal& x) {
    BigReal r(x.prec());
    mpfr_ceil(r.raw(), x.raw());
    return r;
}

inline BigReal pow(const BigReal& x, const BigReal& y) {
    BigReal r(std::max(x.prec(), y.prec()));
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}
inline BigReal pow_si(const BigReal& x, long n) {
    BigReal r(x.prec());
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}
inline BigReal rootn(const BigReal& x, unsigned long k) {
    BigReal r(x.prec());
    mpfr_rootn_ui(r.raw(), x.raw(), k, MPFR_RNDN);
    return r;
}
inline BigReal mul_2si(const BigReal& x, long e) {
    BigReal r(x.prec());
    mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}
inline BigReal min(const BigReal& a, const BigReal& b) { return a < b ? a : b; }
inline BigReal max(const BigReal& a, const BigReal& b) { return a > b ? a : b; }

inline BigReal const_pi(mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}
inline BigReal const_euler(mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_const_euler(r.raw(), MPFR_RNDN);
    return r;
}
inline BigReal zeta_ui(unsigned long k, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_zeta_ui(r.raw(), k, MPFR_RNDN);
    return r;
}
/// 2^e as a BigReal (exact).
inline BigReal pow2(long e, mpfr_prec_t prec) { return BigReal::ldexp(1, e, prec); }

} // namespace ljensen
