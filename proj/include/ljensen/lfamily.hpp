#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ljensen/bigreal.hpp"
#include "ljensen/error.hpp"
#include "ljensen/eta.hpp"
#include "ljensen/kronecker.hpp"
#include "ljensen/quadform.hpp"
#include "ljensen/theta.hpp"

namespace ljensen {

enum class FamilyKind { Zeta, Dirichlet, Modular, Dedekind };

/// Pole contribution to the n-th central derivative:
///   P * n! * ((-1)^(n+1) - eps) * rho^(n+1).
struct PoleRecord {
    BigReal P;
    BigReal rho;
};

/// A concrete completed L-function in the normalization
///   F(n) = c0 * scale^n * (1 + (-1)^n eps) *
///          Int_{t0}^inf (f(t) - alpha0) t^(mu-1) (log Q + 2 log t)^n dt,
/// summed over the family's term streams.
struct LFamily {
    std::string name;
    FamilyKind kind = FamilyKind::Zeta;
    BigReal Q;        // log-argument parameter; t0 = Q^(-1/2) unless overridden
    BigReal t0;
    mpq_class mu;     // integrand power is t^(mu-1)
    BigReal c0;       // constant prefactor
    mpq_class scale;  // per-derivative scale
    int eps = +1;     // functional-equation sign (for modular: i^w eps_f)
    unsigned root_j = 1;
    std::vector<ThetaTermStream> streams;
    std::optional<PoleRecord> pole;
    mpq_class k_center;  // functional-equation weight k; center of symmetry k/2

    bool has_pole() const { return pole.has_value(); }

    /// Dominant derivative order feeding the two-term approximation of gamma(n).
    long m_map(long n) const {
        if (has_pole()) return eps == +1 ? 2 * n - 2 : 2 * n - 1;
        return eps == +1 ? 2 * n : 2 * n + 1;
    }
    /// Order of the phase-stripped central derivative entering exact gamma(n).
    long xi_order(long n) const { return eps == +1 ? 2 * n : 2 * n + 1; }

    /// Effective integrand weight 2*mu (the "k" the saddle-point coefficient
    /// formulas see; equals k_center only when mu = k_center/2).
    mpq_class k_effective() const { return 2 * mu; }

    /// Content digest over constants and the first 64 terms of each stream.
    std::uint64_t content_hash() const {
        std::uint64_t h = 1469598103934665603ULL;
        auto mix = [&h](const std::string& s) {
            for (unsigned char ch : s) {
                h ^= ch;
                h *= 1099511628211ULL;
            }
            h ^= 0x1f;
            h *= 1099511628211ULL;
        };
        mix(name);
        mix(std::to_string(static_cast<int>(kind)));
        mix(Q.hex());
        mix(t0.hex());
        mix(mu.get_str());
        mix(c0.hex());
        mix(scale.get_str());
        mix(std::to_string(eps));
        mix(std::to_string(root_j));
        mix(k_center.get_str());
        mix(has_pole() ? pole->P.hex() + "|" + pole->rho.hex() : "nopole");
        for (const auto& s : streams) {
            mix(s.id());
            auto ts = s.prefix(64);
            for (const auto& t : *ts) {
                mix(t.c.hex());
                mix(t.alpha.hex());
            }
        }
        return h;
    }
};

inline LFamily make_zeta(mpfr_prec_t prec = 256) {
    LFamily f;
    f.name = "zeta";
    f.kind = FamilyKind::Zeta;
    f.Q = BigReal(1.0, prec);
    f.t0 = BigReal(1.0, prec);
    f.mu = mpq_class(1, 4);
    f.c0 = BigReal(1.0, prec);
    f.scale = mpq_class(1, 4);
    f.eps = +1;
    f.root_j = 1;
    f.streams = {riemann_stream(prec)};
    f.pole = PoleRecord{BigReal(1.0, prec), BigReal(2.0, prec)};
    f.k_center = 1;
    return f;
}

inline LFamily make_dirichlet(long D, mpfr_prec_t prec = 256) {
    DirichletCharacterSpec spec(D);
    long N = spec.modulus();
    LFamily f;
    f.name = "dirichlet[" + std::to_string(D) + "]";
    f.kind = FamilyKind::Dirichlet;
    f.Q = BigReal((double)N * N, prec);
    f.t0 = BigReal(1.0, prec) / N;
    f.mu = mpq_class(1 + 2 * spec.nu, 4);
    f.c0 = pow(BigReal((double)N, prec), BigReal(0.25 + 0.5 * spec.nu, prec));
    f.scale = mpq_class(1, 4);
    f.eps = +1;
    f.root_j = 1;
    f.streams = {dirichlet_stream(spec, prec)};
    f.k_center = 1;
    return f;
}

namespace detail {
/// f(iy) = sum a(n) e^(-2 pi n y) evaluated by direct summation.
inline BigReal cusp_series(const std::vector<BigReal>& a, const BigReal& y, mpfr_prec_t prec) {
    BigReal two_pi_y = 2 * const_pi(prec) * y.rounded(prec);
    BigReal q = exp(-two_pi_y), qp = q, s(0.0, prec);
    for (const auto& an : a) {
        s += an.rounded(prec) * qp;
        qp *= q;
    }
    return s;
}
} // namespace detail

/// Determines the Atkin-Lehner sign eps_f from the transformation
/// f(i/(N y)) = i^w eps_f N^(w/2) y^w f(iy), testing both candidate signs at
/// y = 1/sqrt(N) and y = 2/sqrt(N) against the series truncation error.
inline int detect_functional_sign(const std::vector<BigReal>& coeffs, long N, long w,
                                  const PrecisionContext& ctx) {
    if (w % 2 != 0) throw OddWeight("detect_functional_sign: weight must be even");
    const mpfr_prec_t prec = ctx.working_bits;
    const BigReal rtN = sqrt(BigReal((double)N, prec));
    // i^w for even w
    const long iw = (w % 4 == 0) ? 1 : -1;

    // truncation bound: |a(n)| <= n^((w+1)/2), tail of sum n^d e^(-2 pi n y)
    auto tail = [&](const BigReal& y, size_t from) {
        BigReal t = 2 * const_pi(prec) * y;
        BigReal nn((double)from, prec);
        BigReal term = pow(nn, BigReal((w + 1) / 2.0, prec)) * exp(-t * nn);
        return term * (1 + 2 / t);  // geometric comparison beyond the halfway rate
    };

    bool plus_ok = true, minus_ok = true, any_decision = false;
    for (double mult : {1.0, 2.0}) {
        BigReal y = BigReal(mult, prec) / rtN;
        BigReal lhs_arg = BigReal(1.0, prec) / (BigReal((double)N, prec) * y);
        BigReal lhs = detail::cusp_series(coeffs, lhs_arg, prec);
        BigReal rhs_base = pow(BigReal((double)N, prec), BigReal(w / 2.0, prec)) *
                           pow_si(y, w) * detail::cusp_series(coeffs, y, prec);
        BigReal err = tail(min(lhs_arg, y), coeffs.size() + 1) *
                          (1 + pow(BigReal((double)N, prec), BigReal(w / 2.0, prec)) * pow_si(max(y, BigReal(1.0, prec)), w)) +
                      abs(rhs_base) * pow2(-(long)prec + 8, prec);
        BigReal scale_ref = max(abs(lhs), abs(rhs_base));
        if (scale_ref <= err * 4) continue;  // inconclusive at this point
        any_decision = true;
        if (!(abs(lhs - (long)iw * rhs_base) <= err * 4)) plus_ok = false;
        if (!(abs(lhs + (long)iw * rhs_base) <= err * 4)) minus_ok = false;
    }
    if (!any_decision || (plus_ok && minus_ok) || (!plus_ok && !minus_ok))
        throw Inconclusive("detect_functional_sign: supply more coefficients or precision");
    return plus_ok ? +1 : -1;
}

inline LFamily make_modular(long N, long w, const std::vector<BigReal>& coeffs, int eps_f,
                            mpfr_prec_t prec = 256) {
    if (w % 2 != 0) throw OddWeight("make_modular: weight must be even");
    if (N < 1) throw InvalidParams("make_modular: level must be positive");
    if (eps_f != +1 && eps_f != -1) throw InvalidEpsF("make_modular: eps_f must be +1 or -1");
    LFamily f;
    f.name = "modular[" + std::to_string(N) + "," + std::to_string(w) + "]";
    f.kind = FamilyKind::Modular;
    f.Q = BigReal((double)N, prec);
    f.t0 = BigReal(1.0, prec) / sqrt(BigReal((double)N, prec));
    f.mu = mpq_class(w, 2);
    f.c0 = pow(BigReal((double)N, prec), BigReal(w / 4.0, prec));
    f.scale = mpq_class(1, 2);
    long iw = (w % 4 == 0) ? 1 : -1;
    f.eps = (int)iw * eps_f;
    f.root_j = 1;
    f.streams = {modular_stream(coeffs, w, prec)};
    f.k_center = w;
    return f;
}

/// Convenience: level-N eta-product newform family with auto-detected sign.
inline LFamily make_modular_auto(long N, long w, const std::vector<BigReal>& coeffs,
                                 const PrecisionContext& ctx, mpfr_prec_t prec = 256) {
    int eps_f = detect_functional_sign(coeffs, N, w, ctx);
    return make_modular(N, w, coeffs, eps_f, prec);
}

/// Upper incomplete gamma, Gamma(a, x).
inline BigReal upper_gamma(const BigReal& a, const BigReal& x) {
    BigReal r(std::max(a.prec(), x.prec()));
    mpfr_gamma_inc(r.raw(), a.raw(), x.raw(), MPFR_RNDN);
    return r;
}

/// Completed modular L-value N^(s/2) (2 pi)^-s Gamma(s) L(f, s) at real s,
/// by term-wise incomplete-gamma sums after splitting the Mellin integral at
/// y = T. The result is T-independent; evaluating at different T values
/// cross-checks the series transformation behind the functional equation.
inline BigReal modular_lambda(const std::vector<BigReal>& coeffs, long N, long w, int eps_f,
                              const BigReal& s, const BigReal& T, mpfr_prec_t prec) {
    const BigReal two_pi = 2 * const_pi(prec);
    const BigReal Nr((double)N, prec);
    const long iw = (w % 4 == 0) ? 1 : -1;
    const BigReal s1 = s.rounded(prec), s2 = BigReal((double)w, prec) - s1;
    const BigReal T2 = BigReal(1.0, prec) / (Nr * T.rounded(prec));
    BigReal sum1(0.0, prec), sum2(0.0, prec);
    for (size_t i = 0; i < coeffs.size(); ++i) {
        BigReal npi = two_pi * (long)(i + 1);
        sum1 += coeffs[i].rounded(prec) * exp(-s1 * log(npi)) * upper_gamma(s1, npi * T.rounded(prec));
        sum2 += coeffs[i].rounded(prec) * exp(-s2 * log(npi)) * upper_gamma(s2, npi * T2);
    }
    return exp(s1 / 2 * log(Nr)) * sum1 +
           (long)iw * (long)eps_f * exp(s2 / 2 * log(Nr)) * sum2;
}

inline LFamily make_dedekind(long D, mpfr_prec_t prec = 256) {
    if (!is_fundamental_discriminant(D) || D >= 0)
        throw NotFundamental("make_dedekind: need a negative fundamental discriminant");
    LFamily f;
    f.name = "dedekind[" + std::to_string(D) + "]";
    f.kind = FamilyKind::Dedekind;
    f.Q = BigReal(1.0, prec);
    f.t0 = BigReal(1.0, prec);
    f.mu = mpq_class(1, 4);
    f.c0 = BigReal(1.0, prec);
    f.scale = mpq_class(1, 4);
    f.eps = +1;
    f.root_j = 2;
    long w = quad_unit_count(D);
    auto forms = reduced_forms(D);
    for (const auto& q : forms)
        f.streams.push_back(quad_ideal_stream(D, q, 8.0, std::max<mpfr_prec_t>(prec * 4, 2048)));
    // 2^(r1+r2) R h / w with r1 = 0, r2 = 1, R = 1
    f.pole = PoleRecord{BigReal(2.0 * (double)forms.size(), prec) / w, BigReal(2.0, prec)};
    f.k_center = 1;
    return f;
}

} // namespace ljensen
