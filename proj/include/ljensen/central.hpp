#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ljensen/bigreal.hpp"
#include "ljensen/combinatorics.hpp"
#include "ljensen/error.hpp"
#include "ljensen/lfamily.hpp"
#include "ljensen/quadrature.hpp"
#include "ljensen/saddle.hpp"
#include "ljensen/theta.hpp"

namespace ljensen {

struct ValueBound {
    BigReal value;
    BigReal bound;
};

struct GammaRecord {
    long n = 0;
    BigReal value;
    BigReal error_bound;
    std::uint64_t family_hash = 0;
    mpfr_prec_t bits = 0;
};

namespace detail {

/// Saddle location of the integrand of the m-th derivative: for
/// e^(-pi c t^(1/j)) t^(mu-1) (log Q + 2 log t)^m the maximizer is
/// a = e^((L - log Q)/2) with m = (A e^(L/(2j)) + B) L, A = pi c Q^(-1/(2j))/(2j),
/// B = (1-mu)/2.
inline BigReal saddle_L(const BigReal& c_min, const BigReal& Q, const mpq_class& mu,
                        unsigned j, long m, const PrecisionContext& ctx) {
    const mpfr_prec_t wp = ctx.working_bits + ctx.guard_bits;
    BigReal A = const_pi(wp) * c_min.rounded(wp) /
                (2 * (long)j * rootn(Q.rounded(wp), 2 * j));
    BigReal B = (1 - to_bigreal(mpq_class(mu), wp)) / 2;
    return solve_saddle_equation(A, B, BigReal(2.0 * j, wp), BigReal((double)m, wp), ctx);
}

/// Certified integral of (f_s(t) - alpha0) t^(mu-1) (log Q + 2 log t)^m over
/// [t0, inf) for one term stream.
inline ValueBound stream_integral(const LFamily& fam, const ThetaTermStream& stream, long m,
                                  const PrecisionContext& ctx) {
    const mpfr_prec_t wp = ctx.working_bits + ctx.guard_bits;
    const unsigned j = stream.root_exponent();
    const BigReal t0 = fam.t0.rounded(wp);
    const BigReal logQ = log(fam.Q.rounded(wp));
    const BigReal mu_m1 = to_bigreal(fam.mu, wp) - 1;
    const BigReal pi = const_pi(wp);

    // term prefix: discarded theta tail below 2^-(wb+10) of the first term at t0
    const BigReal t0_root = rootn(t0, j);
    const BigReal c_min = stream.c_min().rounded(wp);
    const BigReal first_mag = abs(stream.alpha_min().rounded(wp)) * exp(-pi * c_min * t0_root);
    auto trunc = truncation_index(stream, t0, first_mag * pow2(-(long)ctx.working_bits - 10, wp), wp);
    if (trunc.term_count == 0) trunc.term_count = 1;
    auto prefix = stream.prefix(trunc.term_count);
    if (prefix->size() < trunc.term_count)
        throw NoDecayProof("stream_integral: cannot materialize prefix");
    std::vector<ThetaTerm> terms(prefix->begin(), prefix->end());
    const BigReal alpha1 = abs(stream.alpha_min().rounded(wp));
    // lower bound on the first discarded c; majorant from there bounds the rest
    const BigReal c_next = terms.back().c.rounded(wp) + BigReal(stream.growth().min_gap, wp);

    // Beyond t_dom the first term dominates the rest of the series pointwise
    // (the ratio is decreasing in t), which turns the truncation threshold
    // into a relative error on |f|. Characters of larger modulus start below
    // their domination point, so search upward from t0.
    BigReal t_dom = t0;
    for (int guard = 0;; ++guard) {
        BigReal td_root = rootn(t_dom, j);
        BigReal rel(0.0, wp);
        for (size_t k = 1; k < terms.size(); ++k)
            rel += abs(terms[k].alpha.rounded(wp)) *
                   exp(-pi * (terms[k].c.rounded(wp) - c_min) * td_root);
        rel += stream.tail_majorant(c_next, t_dom, wp) * exp(pi * c_min * td_root);
        if (rel <= alpha1 / 2) break;
        t_dom = t_dom * 2;
        if (guard > 200)
            throw PrecisionInsufficient("stream_integral: no pointwise domination threshold");
    }

    auto theta_sum = [&](const BigReal& t) {
        BigReal tr = rootn(t, j);
        BigReal s(0.0, wp);
        for (const auto& term : terms)
            s += term.alpha.rounded(wp) * exp(-pi * term.c.rounded(wp) * tr);
        return s;
    };
    auto log_powers = [&](const BigReal& t) -> std::optional<BigReal> {
        BigReal lg = logQ + 2 * log(t);
        if (m == 0) return exp(mu_m1 * log(t));
        if (!(lg > 0)) return std::nullopt;  // integrand vanishes at t0 for m >= 1
        return exp(mu_m1 * log(t) + (long)m * log(lg));
    };
    auto integrand = [&](const BigReal& t) {
        auto p = log_powers(t);
        if (!p) return BigReal(0.0, wp);
        return theta_sum(t) * *p;
    };

    // peak hint from the saddle (plain decaying shape for m = 0)
    BigReal a = t0;
    if (m >= 1) {
        BigReal L = saddle_L(c_min, fam.Q, fam.mu, j, m, ctx).rounded(wp);
        a = exp((L - logQ) / 2);
        if (a < t0) a = t0;
    }

    auto tail_beyond = [&](const BigReal& T) -> std::optional<BigReal> {
        if (T < t_dom) return std::nullopt;
        BigReal Tr = rootn(T, j);
        BigReal lgT = logQ + 2 * log(T);
        if (!(lgT > 0)) return std::nullopt;
        BigReal psi = -(pi * c_min / (long)j) * Tr + mu_m1 + (m ? 2 * (long)m / lgT : BigReal(0.0, wp));
        if (!(psi <= BigReal(-2.0, wp))) return std::nullopt;
        BigReal A1(0.0, wp);
        for (const auto& term : terms)
            A1 += abs(term.alpha.rounded(wp)) * exp(-pi * (term.c.rounded(wp) - c_min) * Tr);
        A1 += stream.tail_majorant(c_next, T, wp) * exp(pi * c_min * Tr);
        BigReal phi = exp(-pi * c_min * Tr + mu_m1 * log(T) + (m ? (long)m * log(lgT) : BigReal(0.0, wp)));
        return A1 * phi * T / (-psi - 1);
    };

    const BigReal rel = pow2(-std::min<long>((long)ctx.working_bits - 2 * (long)ctx.guard_bits, 120), wp);
    auto qr = quadrature_decaying(integrand, t0, a, rel, ctx, tail_beyond);
    // discarded theta terms: relative control beyond t_dom, absolute below it
    qr.bound += abs(qr.value) * pow2(-(long)ctx.working_bits - 9, wp) * 2;
    if (t_dom > t0) {
        BigReal p_max = max(exp(mu_m1 * log(t0)), exp(mu_m1 * log(t_dom)));
        if (m >= 1) {
            BigReal lgd = logQ + 2 * log(t_dom);
            p_max *= (lgd > 0) ? exp((long)m * log(lgd)) : BigReal(0.0, wp);
        }
        qr.bound += stream.tail_majorant(c_next, t0, wp) * (t_dom - t0) * p_max;
    }
    return {qr.value, qr.bound};
}

} // namespace detail

/// F(n) = c0 * scale^n * (1 + (-1)^n eps) * sum_streams Int (f - alpha0) ...dt,
/// with a certified error bound. Exactly zero (bound zero) when the parity
/// factor vanishes.
inline ValueBound central_f(const LFamily& fam, long n, const PrecisionContext& ctx) {
    if (n < 0) throw InvalidParams("central_f: n must be >= 0");
    const mpfr_prec_t wp = ctx.working_bits + ctx.guard_bits;
    const long parity = 1 + ((n % 2 == 0) ? fam.eps : -fam.eps);
    if (parity == 0) return {BigReal(0.0, ctx.working_bits), BigReal(0.0, ctx.working_bits)};

    mpq_class sc;
    mpz_pow_ui(sc.get_num_mpz_t(), fam.scale.get_num().get_mpz_t(), (unsigned long)n);
    mpz_pow_ui(sc.get_den_mpz_t(), fam.scale.get_den().get_mpz_t(), (unsigned long)n);
    BigReal pref = fam.c0.rounded(wp) * to_bigreal(sc, wp) * parity;

    BigReal total(0.0, wp), bound(0.0, wp);
    for (const auto& s : fam.streams) {
        auto vb = detail::stream_integral(fam, s, n, ctx);
        total += vb.value.rounded(wp);
        bound += vb.bound.rounded(wp);
    }
    BigReal value = pref * total;
    BigReal err = abs(pref) * bound + abs(value) * pow2(-(long)ctx.working_bits + 4, wp);
    return {value.rounded(ctx.working_bits), err.rounded(ctx.working_bits)};
}

/// Pole contribution P n! ((-1)^(n+1) - eps) rho^(n+1); zero for entire families.
inline BigReal pole_term(const LFamily& fam, long n, const PrecisionContext& ctx) {
    const mpfr_prec_t wp = ctx.working_bits + ctx.guard_bits;
    if (!fam.has_pole()) return BigReal(0.0, wp);
    long sign_part = ((n % 2 == 0) ? -1 : 1) - fam.eps;
    if (sign_part == 0) return BigReal(0.0, wp);
    return fam.pole->P.rounded(wp) * to_bigreal(factorial((unsigned long)n), wp) * sign_part *
           pow_si(fam.pole->rho.rounded(wp), n + 1);
}

/// Lambda^(n)(k/2) = pole term + F(n).
inline ValueBound lambda_central_derivative(const LFamily& fam, long n, const PrecisionContext& ctx) {
    auto f = central_f(fam, n, ctx);
    const mpfr_prec_t wp = ctx.working_bits + ctx.guard_bits;
    BigReal p = pole_term(fam, n, ctx);
    BigReal value = f.value.rounded(wp) + p;
    BigReal bound = f.bound.rounded(wp) + abs(p) * pow2(-(long)ctx.working_bits + 4, wp);
    return {value.rounded(ctx.working_bits), bound.rounded(ctx.working_bits)};
}

/// Phase-stripped n-th derivative of Xi at 0: the real number xi_n with
/// Xi^(n)(0) = (-i)^n xi_n. For pole families and n >= 2 the two pole parts
/// cancel identically, leaving n(n-1) F(n-2) - (k^2/4) F(n); for n < 2 the
/// pole contribution survives inside -(k^2/4) Lambda^(n)(k/2).
inline ValueBound xi_derivative_at_zero(const LFamily& fam, long n, const PrecisionContext& ctx) {
    if (n < 0) throw InvalidParams("xi_derivative_at_zero: n must be >= 0");
    const mpfr_prec_t wp = ctx.working_bits + ctx.guard_bits;
    if (!fam.has_pole()) return central_f(fam, n, ctx);

    BigReal k2_over4 = to_bigreal(fam.k_center * fam.k_center / 4, wp);
    if (n < 2) {
        auto lam = lambda_central_derivative(fam, n, ctx);
        return {(-k2_over4 * lam.value.rounded(wp)).rounded(ctx.working_bits),
                (k2_over4 * lam.bound.rounded(wp)).rounded(ctx.working_bits)};
    }
    auto f2 = central_f(fam, n - 2, ctx);
    auto f0 = central_f(fam, n, ctx);
    BigReal coef((double)n * (n - 1), wp);
    BigReal value = coef * f2.value.rounded(wp) - k2_over4 * f0.value.rounded(wp);
    BigReal bound = coef * f2.bound.rounded(wp) + k2_over4 * f0.bound.rounded(wp) +
                    abs(value) * pow2(-(long)ctx.working_bits + 4, wp);
    return {value.rounded(ctx.working_bits), bound.rounded(ctx.working_bits)};
}

/// gamma(n) = (n!/(2n)!) xi_{2n}   (eps = +1)
///          = (n!/(2n+1)!) xi_{2n+1} (eps = -1), ratio formed exactly.
inline GammaRecord taylor_gamma(const LFamily& fam, long n, const PrecisionContext& ctx) {
    if (n < 0) throw InvalidParams("taylor_gamma: n must be >= 0");
    const mpfr_prec_t wp = ctx.working_bits + ctx.guard_bits;
    long order = fam.xi_order(n);
    auto xi = xi_derivative_at_zero(fam, order, ctx);
    BigReal ratio = factorial_ratio((unsigned long)n, (unsigned long)order, wp);
    GammaRecord rec;
    rec.n = n;
    rec.value = (ratio * xi.value.rounded(wp)).rounded(ctx.working_bits);
    rec.error_bound = (ratio * xi.bound.rounded(wp) +
                       abs(rec.value) * pow2(-(long)ctx.working_bits + 4, wp))
                          .rounded(ctx.working_bits);
    rec.family_hash = fam.content_hash();
    rec.bits = ctx.working_bits;
    return rec;
}

} // namespace ljensen
