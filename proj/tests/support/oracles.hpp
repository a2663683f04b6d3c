#pragma once

// Independent oracles used by the test suites. Everything here deliberately
// avoids the library's quadrature/saddle code paths: integrals are evaluated
// through Gamma-function series after the u = log t substitution, special
// values through classical identities (alternating-series acceleration, AGM),
// and root counts through a dense complex root finder.

#include <gmpxx.h>

#include <vector>

#include "ljensen/bigreal.hpp"
#include "ljensen/central.hpp"
#include "ljensen/lfamily.hpp"

namespace oracles {

using ljensen::BigReal;
using ljensen::pow2;
using ljensen::const_pi;

// ---------------------------------------------------------------------------
// dense power series over BigReal, just enough for the oracle assembly
// ---------------------------------------------------------------------------
using Series = std::vector<BigReal>;

inline Series smul(const Series& a, const Series& b, size_t ord, mpfr_prec_t prec) {
    Series r(ord + 1, BigReal(0.0, prec));
    for (size_t i = 0; i < a.size() && i <= ord; ++i)
        for (size_t j = 0; j < b.size() && i + j <= ord; ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

inline Series sexp(const Series& a, size_t ord, mpfr_prec_t prec) {  // a[0] == 0
    Series r(ord + 1, BigReal(0.0, prec));
    r[0] = BigReal(1.0, prec);
    Series term = r;
    mpz_class kfact = 1;
    for (size_t k = 1; k <= ord; ++k) {
        term = smul(term, a, ord, prec);
        kfact *= (unsigned long)k;
        BigReal inv = BigReal(1.0, prec) / ljensen::to_bigreal(kfact, prec);
        for (size_t i = 0; i <= ord; ++i) r[i] += term[i] * inv;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Bernoulli numbers and Hurwitz zeta (Euler-Maclaurin), for polygamma
// ---------------------------------------------------------------------------
inline const std::vector<mpq_class>& bernoulli_even(size_t count) {
    static std::vector<mpq_class> all;  // B_0, B_2, B_4, ... via the defining recurrence
    if (all.size() < count) {
        size_t nmax = 2 * count + 2;
        std::vector<mpq_class> B(nmax + 1);
        B[0] = 1;
        for (size_t n = 1; n <= nmax; ++n) {
            mpq_class s = 0;
            for (size_t k = 0; k < n; ++k)
                s += mpq_class(ljensen::binomial((unsigned long)(n + 1), (unsigned long)k)) * B[k];
            B[n] = -s / (long)(n + 1);  // C(n+1, n) = n+1
        }
        all.clear();
        for (size_t j = 0; 2 * j <= nmax; ++j) all.push_back(B[2 * j]);
    }
    return all;
}

/// Hurwitz zeta(s, a) for integer s >= 2, a > 0, by Euler-Maclaurin.
inline BigReal hurwitz_zeta(long s, const BigReal& a, mpfr_prec_t prec) {
    const mpfr_prec_t wp = prec + 64;
    long K = std::max<long>(16, (long)(prec / 3));
    BigReal sum(0.0, wp);
    for (long k = 0; k < K; ++k) sum += pow_si(a.rounded(wp) + k, -s);
    BigReal aK = a.rounded(wp) + K;
    sum += pow_si(aK, 1 - s) / (s - 1);
    sum += pow_si(aK, -s) / 2;
    const auto& B = bernoulli_even(80);
    mpz_class fact = 1;  // (2j)!
    for (long j = 1; j < 78; ++j) {
        fact *= (2 * j - 1);
        fact *= (2 * j);
        mpz_class rising = 1;  // s (s+1) ... (s+2j-2)
        for (long t = 0; t <= 2 * j - 2; ++t) rising *= (s + t);
        BigReal term = ljensen::to_bigreal(B[(size_t)j], wp) / ljensen::to_bigreal(fact, wp) *
                       ljensen::to_bigreal(rising, wp) * pow_si(aK, -s - 2 * j + 1);
        sum += term;
        if (abs(term) < pow2(-(long)prec - 16, wp)) break;
    }
    return sum.rounded(prec);
}

/// polygamma psi^(i)(a): digamma from MPFR, higher orders via Hurwitz zeta.
inline BigReal polygamma(long i, const BigReal& a, mpfr_prec_t prec) {
    if (i == 0) return digamma_fn(a.rounded(prec));
    BigReal v = ljensen::to_bigreal(ljensen::factorial((unsigned long)i), prec) *
                hurwitz_zeta(i + 1, a, prec);
    return (i % 2 == 1) ? v : -v;
}

/// Taylor coefficients of Gamma(mu + x) to order `ord`.
inline Series gamma_taylor(const BigReal& mu, size_t ord, mpfr_prec_t prec) {
    Series logg(ord + 1, BigReal(0.0, prec));
    mpz_class fact = 1;
    for (size_t i = 1; i <= ord; ++i) {
        fact *= (unsigned long)i;
        logg[i] = polygamma((long)i - 1, mu, prec) / ljensen::to_bigreal(fact, prec);
    }
    Series g = sexp(logg, ord, prec);
    BigReal g0 = gamma_fn(mu.rounded(prec));
    for (auto& c : g) c *= g0;
    return g;
}

// ---------------------------------------------------------------------------
// term integral Int_{t0}^inf e^(-pi c t) t^(mu-1) (log Q + 2 log t)^m dt
// through the x-series of z^-s Gamma(s, z) at s = mu (z = pi c t0):
//   I(m) = 2^m t0^mu m! [x^m] ( z^-mu e^(-x log z) Gamma(mu+x)
//                               - sum_k (-z)^k/k! * 1/(mu+k+x) ).
// ---------------------------------------------------------------------------
inline BigReal term_integral_series(const BigReal& c, const BigReal& mu, const BigReal& t0,
                                    long m, mpfr_prec_t prec) {
    const double zd = (ljensen::const_pi(64) * c.rounded(64) * t0.rounded(64)).to_double();
    const mpfr_prec_t wp = prec + 96 + (mpfr_prec_t)(1.5 * zd);  // alternating-sum cancellation
    const size_t ord = (size_t)m;
    BigReal z = ljensen::const_pi(wp) * c.rounded(wp) * t0.rounded(wp);

    // E(x) * G(x) * z^-mu
    Series e(ord + 1, BigReal(0.0, wp));
    BigReal nlz = -log(z);
    BigReal acc(1.0, wp);
    mpz_class fact = 1;
    e[0] = BigReal(1.0, wp);
    for (size_t i = 1; i <= ord; ++i) {
        acc *= nlz;
        fact *= (unsigned long)i;
        e[i] = acc / ljensen::to_bigreal(fact, wp);
    }
    Series g = gamma_taylor(mu.rounded(wp), ord, wp);
    Series h = smul(e, g, ord, wp);
    BigReal zmu = exp(-mu.rounded(wp) * log(z));
    for (auto& x : h) x *= zmu;

    // subtract the lower-incomplete part: coefficients (-1)^i S_(i+1),
    // S_j = sum_k (-z)^k / (k! (mu+k)^j)
    std::vector<BigReal> S(ord + 2, BigReal(0.0, wp));
    BigReal zk(1.0, wp);  // (-z)^k / k!
    for (long k = 0; k < 100000; ++k) {
        if (k > 0) zk *= -z / k;
        BigReal base = mu.rounded(wp) + k;
        BigReal p = zk / base;
        bool tiny = true;
        for (size_t j = 1; j <= ord + 1; ++j) {
            S[j] += p;
            if (!(abs(p) < pow2(-(long)prec - 64, wp))) tiny = false;
            p /= base;
        }
        if (tiny && (double)k > zd + 8) break;
    }
    for (size_t i = 0; i <= ord; ++i) {
        BigReal corr = S[i + 1];
        if (i % 2 == 1) corr = -corr;
        h[i] -= corr;
    }

    // I(m) = 2^m t0^mu m! h[m]
    BigReal out = h[ord] * ljensen::to_bigreal(ljensen::factorial((unsigned long)m), wp) *
                  exp(mu.rounded(wp) * log(t0.rounded(wp))) * pow2(m, wp);
    return out.rounded(prec);
}

/// Term-wise substitution oracle for F(n): sums term_integral_series over the
/// family's theta terms (root exponent 2 reduced to 1 by t = u^2).
inline BigReal central_f_oracle(const ljensen::LFamily& fam, long n, mpfr_prec_t prec) {
    const mpfr_prec_t wp = prec + 32;
    long parity = 1 + ((n % 2 == 0) ? fam.eps : -fam.eps);
    if (parity == 0) return BigReal(0.0, prec);

    BigReal total(0.0, wp);
    for (const auto& stream : fam.streams) {
        // enough terms that the leading-exponent decay kills the rest
        double c_need = stream.c_min().to_double() +
                        (prec + 80) * 0.6931 /
                            (ljensen::const_pi(64).to_double() *
                             std::pow(fam.t0.to_double(), 1.0 / stream.root_exponent()));
        auto terms = stream.terms_up_to(BigReal(c_need, 64));
        for (const auto& term : *terms) {
            BigReal contrib(0.0, wp);
            if (stream.root_exponent() == 1) {
                contrib = term.alpha.rounded(wp) *
                          term_integral_series(term.c, ljensen::to_bigreal(fam.mu, wp), fam.t0,
                                               n, wp);
            } else {
                // t = u^2: Int e^(-pi c sqrt t) t^(mu-1) (2 log t)^m dt
                //        = 2 * 2^m Int e^(-pi c u) u^(2mu-1) (2 log u)^m du
                contrib = term.alpha.rounded(wp) * 2 * pow2(n, wp) *
                          term_integral_series(term.c, ljensen::to_bigreal(2 * fam.mu, wp),
                                               BigReal(1.0, wp), n, wp);
            }
            total += contrib;
        }
    }
    mpq_class sc;
    mpz_pow_ui(sc.get_num_mpz_t(), fam.scale.get_num().get_mpz_t(), (unsigned long)n);
    mpz_pow_ui(sc.get_den_mpz_t(), fam.scale.get_den().get_mpz_t(), (unsigned long)n);
    BigReal value = fam.c0.rounded(wp) * ljensen::to_bigreal(sc, wp) * parity * total;
    return value.rounded(prec);
}

// ---------------------------------------------------------------------------
// classical special values
// ---------------------------------------------------------------------------

/// zeta(s) for real s in (0,1) via the eta function with Chebyshev
/// alternating-series acceleration (error ~ 5.83^-n).
inline BigReal zeta_alternating(const BigReal& s, mpfr_prec_t prec) {
    const mpfr_prec_t wp = prec + 64;
    const long n = (long)(prec * 0.4) + 24;
    BigReal base = 3 + sqrt(BigReal(8.0, wp));
    BigReal d = (pow_si(base, n) + pow_si(base, -n)) / 2;
    BigReal b(-1.0, wp), c = -d, sum(0.0, wp);
    for (long k = 0; k < n; ++k) {
        c = b - c;
        sum += c * exp(-s.rounded(wp) * log(BigReal((double)k + 1, wp)));
        b = b * 2 * (k + n) * (k - n);
        b /= (2 * k + 1) * (k + 1);
    }
    BigReal eta = sum / d;
    BigReal denom = 1 - exp((1 - s.rounded(wp)) * log(BigReal(2.0, wp)));
    return (eta / denom).rounded(prec);
}

/// Gamma(1/4) through the lemniscatic AGM identity Gamma(1/4)^2 = (2 pi)^(3/2)/agm(1, sqrt 2).
inline BigReal gamma_quarter_agm(mpfr_prec_t prec) {
    const mpfr_prec_t wp = prec + 32;
    BigReal one(1.0, wp), rt2 = sqrt(BigReal(2.0, wp));
    BigReal agm(wp);
    mpfr_agm(agm.raw(), one.raw(), rt2.raw(), MPFR_RNDN);
    BigReal twopi = 2 * ljensen::const_pi(wp);
    return sqrt(sqrt(twopi * twopi * twopi) / agm).rounded(prec);
}

// ---------------------------------------------------------------------------
// dense complex root finder (Durand-Kerner) for Sturm soundness checks
// ---------------------------------------------------------------------------
struct Cplx {
    BigReal re, im;
    Cplx(double r, double i, mpfr_prec_t p) : re(r, p), im(i, p) {}
    Cplx(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
};
inline Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
inline Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
inline Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Cplx operator/(const Cplx& a, const Cplx& b) {
    BigReal d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline BigReal cabs(const Cplx& a) { return sqrt(a.re * a.re + a.im * a.im); }

/// All roots of a real polynomial (coefficients low-to-high), 200-bit
/// Durand-Kerner iteration.
inline std::vector<Cplx> dense_roots(const std::vector<BigReal>& coef, mpfr_prec_t prec = 200) {
    size_t deg = coef.size() - 1;
    std::vector<Cplx> roots;
    auto eval = [&](const Cplx& z) {
        Cplx acc(0.0, 0.0, prec);
        for (size_t i = coef.size(); i-- > 0;)
            acc = acc * z + Cplx(coef[i].rounded(prec), BigReal(0.0, prec));
        return acc;
    };
    // distinct non-real starting points
    for (size_t i = 0; i < deg; ++i)
        roots.emplace_back(std::cos(0.7 + 2.1 * (double)i), std::sin(0.4 + 1.9 * (double)i), prec);
    BigReal lead = coef.back().rounded(prec);
    for (int iter = 0; iter < 500; ++iter) {
        BigReal worst(0.0, prec);
        for (size_t i = 0; i < deg; ++i) {
            Cplx num = eval(roots[i]);
            Cplx den(lead, BigReal(0.0, prec));
            for (size_t j = 0; j < deg; ++j)
                if (j != i) den = den * (roots[i] - roots[j]);
            Cplx step = num / den;
            roots[i] = roots[i] - step;
            worst = max(worst, cabs(step));
        }
        if (worst < pow2(-(long)prec + 24, prec)) break;
    }
    return roots;
}

/// Count roots with |Im| below tol (i.e. real roots with multiplicity).
inline long dense_real_root_count(const std::vector<BigReal>& coef, double tol = 1e-30) {
    auto roots = dense_roots(coef);
    long n = 0;
    for (const auto& r : roots)
        if (abs(r.im) < BigReal(tol, 200)) ++n;
    return n;
}

} // namespace oracles
