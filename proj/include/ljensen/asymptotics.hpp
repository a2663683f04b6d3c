#pragma once

#include <vector>

#include "ljensen/bigreal.hpp"
#include "ljensen/central.hpp"
#include "ljensen/combinatorics.hpp"
#include "ljensen/lfamily.hpp"
#include "ljensen/series.hpp"

namespace ljensen {

/// Saddle data of the m-th derivative integrand of one term stream:
/// L = log Q + 2 log a at the maximizer a, the true curvature C of
/// -d^2/dv^2 log g(a e^v) at v = 0, and eps_var = 1/L.
struct SaddlePoint {
    long m = 0;
    BigReal L;
    BigReal a;
    BigReal C;
    BigReal eps_var;
};

namespace detail {

inline SaddlePoint saddle_for_stream(const LFamily& fam, const ThetaTermStream& stream, long m,
                                     const PrecisionContext& ctx) {
    if (m < 1) throw InvalidParams("saddle_point: m must be >= 1");
    const mpfr_prec_t wp = ctx.working_bits + ctx.guard_bits;
    const unsigned j = stream.root_exponent();
    SaddlePoint sp;
    sp.m = m;
    sp.L = saddle_L(stream.c_min(), fam.Q, fam.mu, j, m, ctx).rounded(wp);
    sp.a = exp((sp.L - log(fam.Q.rounded(wp))) / 2);
    sp.eps_var = 1 / sp.L;
    BigReal mu_m1 = to_bigreal(fam.mu, wp) - 1;
    BigReal S_over_j = 2 * m / sp.L + mu_m1;  // pi c a^(1/j) / j
    // true curvature: 2m(eps + 2 eps^2) + (mu-1) + 2 S binom(1/j, 2)
    sp.C = 2 * m * (sp.eps_var + 2 * sp.eps_var * sp.eps_var) + mu_m1 +
           S_over_j * (BigReal(1.0, wp) / (long)j - 1);
    return sp;
}

/// index of the stream with the smallest leading exponent (dominant class)
inline size_t dominant_stream(const LFamily& fam) {
    size_t best = 0;
    for (size_t i = 1; i < fam.streams.size(); ++i)
        if (fam.streams[i].c_min() < fam.streams[best].c_min()) best = i;
    return best;
}

} // namespace detail

/// Saddle point of the family's dominant term stream.
inline SaddlePoint saddle_point(const LFamily& fam, long m, const PrecisionContext& ctx) {
    return detail::saddle_for_stream(fam, fam.streams[detail::dominant_stream(fam)], m, ctx);
}

/// Coefficients h_i of log[g((1+lambda) a)/g(a)] around the saddle:
/// h_1 = 0 (saddle condition), h_2 = -C/2, higher orders assembled from the
/// exact expansions of m log(1 + 2 eps log(1+lambda)), (mu-1) log(1+lambda)
/// and the -pi c a^(1/j) (1+lambda)^(1/j) kernel term.
struct LogExpansion {
    std::vector<BigReal> h;  // h[0..order]
    BigReal C;
    long m = 0;
    unsigned root_j = 1;
};

inline LogExpansion log_expansion(const LFamily& fam, const SaddlePoint& sp, size_t order,
                                  const PrecisionContext& ctx) {
    if (order < 2) throw InvalidParams("log_expansion: order must be >= 2");
    const mpfr_prec_t wp = ctx.working_bits + ctx.guard_bits;
    const unsigned j = fam.root_j;
    PowerSeries lam = PowerSeries::log_one_plus_lambda(order, wp);
    PowerSeries u(order, wp);
    for (size_t i = 1; i <= order; ++i) u[i] = 2 * sp.eps_var.rounded(wp) * lam[i];
    PowerSeries gl = u.log1p_series();

    BigReal mu_m1 = to_bigreal(fam.mu, wp) - 1;
    BigReal S = (long)j * (2 * sp.m / sp.L.rounded(wp) + mu_m1);  // pi c a^(1/j)
    BigReal inv_j = BigReal(1.0, wp) / (long)j;

    LogExpansion out;
    out.h.assign(order + 1, BigReal(0.0, wp));
    out.m = sp.m;
    out.root_j = j;
    for (size_t i = 1; i <= order; ++i)
        out.h[i] = sp.m * gl[i] + mu_m1 * lam[i] - S * real_binomial(inv_j, i, wp);
    out.C = -2 * out.h[2];
    return out;
}

/// Exponentiation of the cubic-and-higher part: coefficients A_3..A_(2r) with
/// g((1+lambda)a)/g(a) = e^(-C lambda^2/2)(1 + A_3 lambda^3 + ...), plus the
/// Gaussian-moment resummation 1 + sum_i (2i-1)!! A_(2i)/C^i.
struct CorrectionSeries {
    std::vector<BigReal> A;  // A[i] valid for 3 <= i <= A.size()-1
    BigReal C;

    BigReal factor(size_t order_r) const {
        BigReal f(1.0, C.prec());
        for (size_t i = 2; i <= order_r && 2 * i < A.size(); ++i)
            f += to_bigreal(odd_double_factorial((unsigned long)i), C.prec()) * A[2 * i] /
                 pow_si(C, (long)i);
        return f;
    }
};

inline CorrectionSeries correction_terms(const LogExpansion& le, size_t order_r) {
    const size_t ord = le.h.size() - 1;
    const mpfr_prec_t wp = le.C.prec();
    PowerSeries cubic(ord, wp);
    for (size_t i = 3; i <= ord; ++i) cubic[i] = le.h[i];
    PowerSeries expd = cubic.exp_series();
    CorrectionSeries cs;
    cs.C = le.C;
    size_t top = std::min(ord, 2 * order_r);
    cs.A.assign(top + 1, BigReal(0.0, wp));
    for (size_t i = 3; i <= top; ++i) cs.A[i] = expd[i];
    return cs;
}

namespace detail {

/// Laplace main term of one stream's integral (no correction factor):
/// alpha_min e^(-pi c a^(1/j)) a^mu L^m sqrt(2 pi / C).
inline BigReal stream_laplace_main(const LFamily& fam, const ThetaTermStream& stream,
                                   const SaddlePoint& sp, const PrecisionContext& ctx) {
    const mpfr_prec_t wp = ctx.working_bits + ctx.guard_bits;
    if (!(sp.C > 0)) throw NonpositiveCurvature("laplace main term: curvature not positive");
    BigReal alpha = stream.alpha_min().rounded(wp);
    if (!(alpha > 0))
        throw InvalidParams("laplace main term: leading theta coefficient must be positive");
    BigReal mu = to_bigreal(fam.mu, wp);
    BigReal S = (long)fam.root_j * (2 * sp.m / sp.L.rounded(wp) + mu - 1);
    BigReal logmain = log(alpha) - S + mu * (sp.L.rounded(wp) - log(fam.Q.rounded(wp))) / 2 +
                      sp.m * log(sp.L.rounded(wp)) +
                      (log(2 * const_pi(wp)) - log(sp.C.rounded(wp))) / 2;
    return exp(logmain);
}

inline BigReal family_prefactor(const LFamily& fam, long m, mpfr_prec_t wp) {
    long parity = 1 + ((m % 2 == 0) ? fam.eps : -fam.eps);
    mpq_class sc;
    mpz_pow_ui(sc.get_num_mpz_t(), fam.scale.get_num().get_mpz_t(), (unsigned long)m);
    mpz_pow_ui(sc.get_den_mpz_t(), fam.scale.get_den().get_mpz_t(), (unsigned long)m);
    return fam.c0.rounded(wp) * to_bigreal(sc, wp) * parity;
}

} // namespace detail

/// Saddle-point evaluation of F(m) at resummation order r (A_4..A_(2r) enter).
inline BigReal asymptotic_F(const LFamily& fam, long m, size_t order_r,
                            const PrecisionContext& ctx) {
    const mpfr_prec_t wp = ctx.working_bits + ctx.guard_bits;
    long parity = 1 + ((m % 2 == 0) ? fam.eps : -fam.eps);
    if (parity == 0) return BigReal(0.0, ctx.working_bits);
    BigReal total(0.0, wp);
    for (const auto& s : fam.streams) {
        auto sp = detail::saddle_for_stream(fam, s, m, ctx);
        BigReal main = detail::stream_laplace_main(fam, s, sp, ctx);
        if (order_r >= 2) {
            auto le = log_expansion(fam, sp, 2 * order_r, ctx);
            main *= correction_terms(le, order_r).factor(order_r);
        }
        total += main;
    }
    return (detail::family_prefactor(fam, m, wp) * total).rounded(ctx.working_bits);
}

/// Which closed form of b_1 enters the two-term approximation.
enum class B1Variant {
    General,     // 2(31L^4+189L^3+542L^2+744L+496) / (3(L+2)^3)
    Family,      // (L^4+9L^3+32L^2+24L+16) / (24(L+2)^3): the true 1/m coefficient
    Calibrated,  // (L^4+9L^3+56L^2+16) / (24(L+2)^3): matches the reference tables
};

inline BigReal b1_value(const BigReal& L, B1Variant v) {
    const mpfr_prec_t wp = L.prec();
    BigReal L2 = L * L, L3 = L2 * L, L4 = L3 * L;
    BigReal denom = pow_si(L + 2, 3);
    switch (v) {
        case B1Variant::General:
            return 2 * (31 * L4 + 189 * L3 + 542 * L2 + 744 * L + BigReal(496.0, wp)) / (3 * denom);
        case B1Variant::Family:
            return (L4 + 9 * L3 + 32 * L2 + 24 * L + BigReal(16.0, wp)) / (24 * denom);
        case B1Variant::Calibrated:
            return (L4 + 9 * L3 + 56 * L2 + BigReal(16.0, wp)) / (24 * denom);
    }
    return BigReal(0.0, wp);
}

/// Two-term approximation F^(m) = main * (1 + b_1(L)/m).
inline BigReal two_term_Fhat(const LFamily& fam, long m, B1Variant variant = B1Variant::Calibrated,
                             const PrecisionContext& ctx = PrecisionContext()) {
    if (m < 1) throw InvalidParams("two_term_Fhat: m must be >= 1");
    const mpfr_prec_t wp = ctx.working_bits + ctx.guard_bits;
    long parity = 1 + ((m % 2 == 0) ? fam.eps : -fam.eps);
    if (parity == 0) return BigReal(0.0, ctx.working_bits);
    BigReal total(0.0, wp);
    for (const auto& s : fam.streams) {
        auto sp = detail::saddle_for_stream(fam, s, m, ctx);
        total += detail::stream_laplace_main(fam, s, sp, ctx) *
                 (1 + b1_value(sp.L.rounded(wp), variant) / m);
    }
    return (detail::family_prefactor(fam, m, wp) * total).rounded(ctx.working_bits);
}

/// gammahat(n) = (n!/m!) Fhat(m) with m the dominant derivative order.
inline BigReal gamma_hat(const LFamily& fam, long n, B1Variant variant = B1Variant::Calibrated,
                         const PrecisionContext& ctx = PrecisionContext()) {
    if (n < 2) throw InvalidParams("gamma_hat: n must be >= 2");
    const long m = fam.m_map(n);
    const mpfr_prec_t wp = ctx.working_bits + ctx.guard_bits;
    BigReal ratio = factorial_ratio((unsigned long)n, (unsigned long)m, wp);
    return (ratio * two_term_Fhat(fam, m, variant, ctx).rounded(wp)).rounded(ctx.working_bits);
}

/// Normalizers of the Hermite-limit affine map, calibrated so that the
/// resulting normalized Jensen polynomials converge to the Hermite family:
///   A(n) = log(n L^2/(4 m^2)) + 2 log(2 scale) + 2(L-2)/(C L^2) + 8m(L+4)/(C^2 L^4)
///   delta(n) = sqrt(1/m - 8/(C L^2)),
/// with (L, C) the saddle data at m = m_map(n) and C the true curvature.
struct HJNormalizers {
    BigReal A;
    BigReal delta;
};

inline HJNormalizers hj_normalizers(const LFamily& fam, long n, const PrecisionContext& ctx) {
    const long m = fam.m_map(n);
    if (m < 1 || n < 1) throw InvalidParams("hj_normalizers: shift too small for this family");
    const mpfr_prec_t wp = ctx.working_bits + ctx.guard_bits;
    auto sp = saddle_point(fam, m, ctx);
    BigReal L = sp.L.rounded(wp), C = sp.C.rounded(wp);
    BigReal L2 = L * L;
    BigReal offset = 2 * log(2 * to_bigreal(fam.scale, wp));
    HJNormalizers out;
    out.A = log(BigReal((double)n, wp) * L2 / (4.0 * (double)m * (double)m)) + offset +
            2 * (L - 2) / (C * L2) + 8 * m * (L + 4) / (C * C * L2 * L2);
    BigReal rad = BigReal(1.0, wp) / m - 8 / (C * L2);
    if (!(rad > 0)) throw NegativeRadicand("hj_normalizers: n below family threshold");
    out.delta = sqrt(rad);
    return out;
}

/// Printed closed forms of the shifted-index ratio expansion, reported as
/// diagnostics: quarter-curvature convention C4 = C/4 and effective weight
/// k = 2 mu make the l1 C4 L^2 = 2 identity exact.
struct RatioDiagnostics {
    BigReal l1, l2, c1, g1, g2;
    BigReal R_gamma;  // product-form ratio gammahat(n+j)/gammahat(n)
};

inline RatioDiagnostics ratio_diagnostics(const LFamily& fam, long n, long jshift,
                                          const PrecisionContext& ctx) {
    const long m = fam.m_map(n);
    if (jshift < 1 || 2 * jshift >= m)
        throw ShiftTooLarge("ratio_diagnostics: need 1 <= j < m/2");
    const mpfr_prec_t wp = ctx.working_bits + ctx.guard_bits;
    auto sp = saddle_point(fam, m, ctx);
    auto sp2 = saddle_point(fam, m + 2 * jshift, ctx);
    BigReal L = sp.L.rounded(wp), C4 = sp.C.rounded(wp) / 4;
    BigReal keff = to_bigreal(fam.k_effective(), wp);
    BigReal L2 = L * L;

    RatioDiagnostics d;
    d.l1 = 2 / (C4 * L2);
    d.l2 = -(L / 2 + 2) * (m + keff * L / 4 - L / 2) / (pow_si(C4, 3) * pow_si(L, 5));
    d.c1 = (L + 2) / (C4 * L2) - m * (L + 4) / (C4 * C4 * L2 * L2);
    BigReal offset = 2 * log(2 * to_bigreal(fam.scale, wp));
    d.g1 = log(BigReal((double)n, wp) * L2 / (4.0 * (double)m * (double)m)) + offset +
           (L - 2) / (2 * C4 * L2) + m * (L + 4) / (2 * C4 * C4 * L2 * L2);
    d.g2 = -(BigReal(1.0, wp) / m - 2 / (C4 * L2));

    // product-form ratio of the Stirling-expanded two-term values
    BigReal Lp = sp2.L.rounded(wp), Cp = sp2.C.rounded(wp);
    BigReal scr = 2 * to_bigreal(fam.scale, wp);
    long j = jshift;
    BigReal nn((double)n, wp), mm((double)m, wp);
    BigReal first = pow_si(exp(BigReal(1.0, wp)) * nn * L2 * scr * scr / (4 * mm * mm), j);
    BigReal stirl = exp((nn + j + BigReal(0.5, wp)) * log((nn + j) / nn) -
                        (mm + 2 * j + BigReal(0.5, wp)) * log((mm + 2 * j) / mm));
    BigReal corr12 = (1 + BigReal(1.0, wp) / (12 * (nn + j))) * (1 + BigReal(1.0, wp) / (12 * mm)) /
                     ((1 + BigReal(1.0, wp) / (12 * nn)) * (1 + BigReal(1.0, wp) / (12 * (mm + 2 * j))));
    BigReal Lr = Lp / L;
    BigReal expo = exp(keff * L / 4 * (Lr - 1) - 2 * (mm + 2 * j) / (Lr * L) + 2 * mm / L);
    BigReal Bfac = (1 + b1_value(Lp, B1Variant::Calibrated) / (m + 2 * j)) /
                   (1 + b1_value(L, B1Variant::Calibrated) / m);
    d.R_gamma = first * stirl * corr12 * exp((mm + 2 * j) * log(Lr)) / sqrt(Cp / sp.C.rounded(wp)) *
                expo * Bfac;
    return d;
}

} // namespace ljensen
