#pragma once

#include <cmath>

#include "ljensen/bigreal.hpp"
#include "ljensen/error.hpp"
#include "ljensen/precision.hpp"

namespace ljensen {

/// Principal-branch Lambert W in double precision, used only to seed the
/// high-precision Newton iteration below.
inline double lambert_w_seed(double x) {
    if (!(x > 0)) return 0.0;
    double w = (x < std::exp(1.0)) ? std::log1p(x)
                                   : std::log(x) - std::log(std::log(x));
    for (int i = 0; i < 8; ++i) {
        double ew = std::exp(w);
        double f = w * ew - x;
        // Halley step
        double d = ew * (w + 1) - (w + 2) * f / (2 * w + 2);
        if (d == 0) break;
        double step = f / d;
        w -= step;
        if (std::abs(step) < 1e-14 * (std::abs(w) + 1e-300)) break;
    }
    return w;
}

/// Solves n = (A*e^(L/j) + B)*L for the unique L > 0 on the increasing branch.
/// Newton seeded by the Lambert-W asymptotic guess, with a geometrically grown
/// bisection bracket as fallback. The result satisfies
/// |n - (A e^(L/j) + B) L| <= 2^(-working_bits+guard_bits) * n.
inline BigReal solve_saddle_equation(const BigReal& A, const BigReal& B, const BigReal& j,
                                     const BigReal& n, const PrecisionContext& ctx) {
    if (!(A > 0) || !(j > 0) || !(n > 0))
        throw InvalidParams("solve_saddle_equation: need A > 0, j > 0, n > 0");

    const mpfr_prec_t wp = ctx.working_bits + ctx.guard_bits + 16;
    const BigReal a = A.rounded(wp), b = B.rounded(wp), jj = j.rounded(wp), nn = n.rounded(wp);

    auto phi = [&](const BigReal& L) { return (a * exp(L / jj) + b) * L - nn; };
    auto dphi = [&](const BigReal& L) { return a * exp(L / jj) * (1 + L / jj) + b; };

    // Branch floor: where A e^(L/j) + B turns positive (only binds for B < 0).
    BigReal lmin(0.0, wp);
    if (b.sign() < 0) lmin = jj * log(-b / a);

    // Lambert-W seed: n ~ A L e^(L/j)  =>  L = j W(n/(A j)).
    double seed = j.to_double() * lambert_w_seed(n.to_double() / (A.to_double() * j.to_double()));
    if (!(seed > 0) || !std::isfinite(seed)) seed = 1.0;
    BigReal L(seed, wp);
    if (L <= lmin) L = lmin + BigReal(1.0, wp);

    // Bracket the root.
    BigReal lo = max(lmin + mul_2si(max(abs(lmin), BigReal(1.0, wp)), -30), L / 4);
    if (lo <= lmin) lo = lmin + mul_2si(BigReal(1.0, wp), -20);
    BigReal hi = max(L * 2, lo * 2);
    int guard = 0;
    while (phi(hi).sign() < 0) {
        hi = hi * 2;
        if (++guard > 600) throw NoConvergence("solve_saddle_equation: no upper bracket");
    }
    guard = 0;
    while (phi(lo).sign() > 0) {
        lo = lmin + (lo - lmin) / 2;
        if (++guard > wp + 64) throw NoConvergence("solve_saddle_equation: no lower bracket");
    }

    if (L < lo || L > hi) L = (lo + hi) / 2;
    const BigReal step_tol = mul_2si(BigReal(1.0, wp), -(long)(ctx.working_bits + 4));
    for (int it = 0; it < 40 + (int)wp; ++it) {
        BigReal f = phi(L);
        if (f.sign() >= 0) hi = L; else lo = L;
        BigReal d = dphi(L);
        BigReal next(wp);
        bool ok = false;
        if (d.sign() > 0) {
            next = L - f / d;
            ok = next.is_finite() && next > lo && next < hi;
        }
        if (!ok) next = (lo + hi) / 2;  // bisection fallback keeps termination
        BigReal step = abs(next - L);
        L = next;
        if (step <= step_tol * abs(L)) break;
    }

    BigReal resid = abs(phi(L));
    if (!(resid <= pow2(-(long)ctx.working_bits + (long)ctx.guard_bits, wp) * nn))
        throw NoConvergence("solve_saddle_equation: residual above certified tolerance");
    return L.rounded(ctx.working_bits);
}

} // namespace ljensen
