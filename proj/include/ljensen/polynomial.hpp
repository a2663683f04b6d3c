#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

#include "ljensen/bigreal.hpp"
#include "ljensen/central.hpp"
#include "ljensen/combinatorics.hpp"
#include "ljensen/error.hpp"

namespace ljensen {

/// Midpoint-radius interval ("ball"). Every operation inflates the radius by
/// the result's rounding ulp so enclosure is preserved at any precision.
struct Ball {
    BigReal mid;
    BigReal rad;

    Ball() : mid(0.0, 64), rad(0.0, 64) {}
    explicit Ball(BigReal m) : mid(std::move(m)), rad(0.0, mid.prec()) {}
    Ball(BigReal m, BigReal r) : mid(std::move(m)), rad(std::move(r)) {}
    static Ball exact_long(long v, mpfr_prec_t prec) { return Ball(BigReal(v, prec)); }

    mpfr_prec_t prec() const { return mid.prec(); }
    bool is_exact() const { return rad.is_zero(); }
    bool contains_zero() const { return abs(mid) <= rad; }
    /// Certain sign: +1/-1 when the interval excludes zero, nullopt otherwise.
    std::optional<int> sign() const {
        if (contains_zero()) return mid.is_zero() && rad.is_zero() ? std::optional<int>(0)
                                                                   : std::nullopt;
        return mid.sign();
    }

    Ball round_slop() const {
        return Ball(mid, rad + abs(mid) * pow2(-(long)prec() + 2, prec()));
    }
    friend Ball operator+(const Ball& a, const Ball& b) {
        return Ball(a.mid + b.mid, a.rad + b.rad).round_slop();
    }
    friend Ball operator-(const Ball& a, const Ball& b) {
        return Ball(a.mid - b.mid, a.rad + b.rad).round_slop();
    }
    Ball operator-() const { return Ball(-mid, rad); }
    friend Ball operator*(const Ball& a, const Ball& b) {
        BigReal r = abs(a.mid) * b.rad + abs(b.mid) * a.rad + a.rad * b.rad;
        return Ball(a.mid * b.mid, r).round_slop();
    }
    friend Ball operator/(const Ball& a, const Ball& b) {
        if (b.contains_zero()) throw LeadingIntervalContainsZero("ball division by interval containing zero");
        BigReal bm = abs(b.mid);
        BigReal r = (abs(a.mid) * b.rad + bm * a.rad) / (bm * (bm - b.rad));
        return Ball(a.mid / b.mid, r).round_slop();
    }
};

/// Dense real polynomial with interval coefficients, low degree first.
/// Construction requires the leading interval to exclude zero.
class RealPolynomial {
public:
    explicit RealPolynomial(std::vector<Ball> coef) : c_(std::move(coef)) {
        normalize();
        if (c_.empty()) throw InvalidParams("RealPolynomial: no coefficients");
        if (c_.size() > 1 && c_.back().contains_zero())
            throw LeadingIntervalContainsZero("RealPolynomial: leading coefficient interval contains zero");
    }

    long degree() const { return (long)c_.size() - 1; }
    const std::vector<Ball>& coefficients() const { return c_; }
    const Ball& operator[](size_t i) const { return c_[i]; }

    Ball evaluate(const Ball& x) const {
        Ball acc = c_.back();
        for (size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    RealPolynomial derivative() const {
        if (c_.size() == 1) return RealPolynomial({Ball(BigReal(0.0, c_[0].prec()))});
        std::vector<Ball> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * Ball(BigReal((double)i, c_[i].prec()));
        return RealPolynomial(std::move(d));
    }

    /// Composition p((s X + t)) as a polynomial in X, via Horner over Ball
    /// polynomial arithmetic.
    RealPolynomial compose_affine(const Ball& s, const Ball& t) const {
        const mpfr_prec_t p = c_.back().prec();
        std::vector<Ball> acc{c_.back()};
        for (size_t i = c_.size() - 1; i-- > 0;) {
            std::vector<Ball> next(acc.size() + 1, Ball(BigReal(0.0, p)));
            for (size_t k = 0; k < acc.size(); ++k) {
                next[k + 1] = next[k + 1] + acc[k] * s;
                next[k] = next[k] + acc[k] * t;
            }
            next[0] = next[0] + c_[i];
            acc = std::move(next);
        }
        while (acc.size() > 1 && acc.back().mid.is_zero() && acc.back().rad.is_zero()) acc.pop_back();
        return RealPolynomial(std::move(acc));
    }

    /// Divide all coefficients by the leading one.
    RealPolynomial monic() const {
        std::vector<Ball> out(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] / c_.back();
        return RealPolynomial(std::move(out));
    }

private:
    void normalize() {
        while (c_.size() > 1 && c_.back().mid.is_zero() && c_.back().rad.is_zero()) c_.pop_back();
    }
    std::vector<Ball> c_;
};

/// J^(d,n)(X) = sum_j C(d,j) gamma(n+j) X^j with exact binomials and the
/// records' certified intervals.
inline RealPolynomial jensen_polynomial(const std::vector<GammaRecord>& records, long d, long n,
                                        mpfr_prec_t prec) {
    std::vector<Ball> coef((size_t)d + 1);
    for (long j = 0; j <= d; ++j) {
        const GammaRecord* rec = nullptr;
        for (const auto& r : records)
            if (r.n == n + j) rec = &r;
        if (!rec) throw MissingRecord("jensen_polynomial: no gamma record for n = " +
                                      std::to_string(n + j));
        BigReal b = to_bigreal(binomial((unsigned long)d, (unsigned long)j), prec);
        coef[(size_t)j] = Ball(b * rec->value.rounded(prec), b * rec->error_bound.rounded(prec));
    }
    return RealPolynomial(std::move(coef));
}

/// Hermite polynomials with H_(d+1) = X H_d - 2 d H_(d-1): H_2 = X^2 - 2,
/// H_3 = X^3 - 6X (generating function e^(Xt - t^2)). Exact integers.
inline RealPolynomial hermite(long d, mpfr_prec_t prec = 128) {
    if (d < 0) throw InvalidParams("hermite: degree must be >= 0");
    std::vector<mpz_class> prev{1}, cur{0, 1};
    if (d == 0) cur = prev;
    for (long k = 1; k < d; ++k) {
        std::vector<mpz_class> next(cur.size() + 1);
        for (size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
        for (size_t i = 0; i < prev.size(); ++i) next[i] -= 2 * k * prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    std::vector<Ball> coef(cur.size());
    for (size_t i = 0; i < cur.size(); ++i) coef[i] = Ball(to_bigreal(cur[i], prec));
    return RealPolynomial(std::move(coef));
}

/// J((delta X - 1) / e^A), made monic.
inline RealPolynomial normalized_jensen(const RealPolynomial& J, const BigReal& A,
                                        const BigReal& delta) {
    if (!(delta > 0)) throw InvalidParams("normalized_jensen: delta must be positive");
    const mpfr_prec_t p = J.coefficients().back().prec();
    Ball emA(exp(-A.rounded(p)));
    Ball s = Ball(delta.rounded(p)) * emA;
    Ball t = -emA;
    return J.compose_affine(s, t).monic();
}

/// max_j |coeff_j(p) - coeff_j(H_d)| over midpoints; p must be monic degree d.
inline BigReal hermite_deviation(const RealPolynomial& p, long d) {
    if (p.degree() != d) throw DegreeMismatch("hermite_deviation: degree mismatch");
    auto H = hermite(d, p.coefficients().back().prec());
    BigReal worst(0.0, p.coefficients().back().prec());
    for (long i = 0; i <= d; ++i)
        worst = max(worst, abs(p[(size_t)i].mid - H[(size_t)i].mid));
    return worst;
}

} // namespace ljensen
