#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "ljensen/bigreal.hpp"
#include "ljensen/error.hpp"
#include "ljensen/precision.hpp"

namespace ljensen {

struct QuadratureResult {
    BigReal value;
    BigReal bound;  // certified: |value - true integral| <= bound
};

namespace detail {

struct GaussLegendreRule {
    std::vector<BigReal> nodes;    // on (-1, 1), symmetric
    std::vector<BigReal> weights;
};

/// Gauss-Legendre nodes/weights by Newton refinement of double-precision
/// Chebyshev initial guesses. Cached per (order, precision).
inline const GaussLegendreRule& gauss_legendre(unsigned order, mpfr_prec_t prec) {
    static std::map<std::pair<unsigned, mpfr_prec_t>, GaussLegendreRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(order, prec);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    GaussLegendreRule rule;
    rule.nodes.reserve(order);
    rule.weights.reserve(order);
    const double pi_d = std::acos(-1.0);
    for (unsigned i = 1; i <= order; ++i) {
        BigReal x(std::cos(pi_d * (i - 0.25) / (order + 0.5)), prec);
        BigReal dp(prec);
        for (int iter = 0; iter < 200; ++iter) {
            // Legendre recurrence for P_order(x) and P'_order(x)
            BigReal p0(1.0, prec), p1 = x;
            for (unsigned k = 2; k <= order; ++k) {
                BigReal p2 = ((2 * (long)k - 1) * x * p1 - ((long)k - 1) * p0) / (long)k;
                p0 = p1;
                p1 = p2;
            }
            dp = (long)order * (x * p1 - p0) / (x * x - 1);
            BigReal step = p1 / dp;
            x -= step;
            if (abs(step) <= mul_2si(max(abs(x), BigReal(1.0, prec)), -(long)prec + 2)) break;
        }
        // recompute dp at the converged node for the weight
        BigReal p0(1.0, prec), p1 = x;
        for (unsigned k = 2; k <= order; ++k) {
            BigReal p2 = ((2 * (long)k - 1) * x * p1 - ((long)k - 1) * p0) / (long)k;
            p0 = p1;
            p1 = p2;
        }
        dp = (long)order * (x * p1 - p0) / (x * x - 1);
        rule.nodes.push_back(x);
        rule.weights.push_back(BigReal(2.0, prec) / ((1 - x * x) * dp * dp));
    }
    return cache.emplace(key, std::move(rule)).first->second;
}

} // namespace detail

/// Certified quadrature of a smooth, single-peaked, one-signed integrand on
/// [t0, inf) that decays at least exponentially in t^(1/j).
///
/// The integral is evaluated after the substitution t = peak * e^v, which
/// flattens the peak; a composite fixed-order Gauss-Legendre rule with a
/// two-mesh (halved step) error estimate covers the window where the
/// integrand is above 2^-(working_bits+20) of its peak value, and everything
/// outside the window is bounded analytically:
///   * upper tail by the caller-supplied tail_beyond(T) (certified bound on
///     |∫_T^∞ f dt|, or nullopt if not certifiable at that T yet),
///   * the skipped left piece by width * max of the endpoint values
///     (valid since the integrand is single-peaked).
inline QuadratureResult quadrature_decaying(
    const std::function<BigReal(const BigReal&)>& f,
    const BigReal& t0, const BigReal& peak_hint, const BigReal& rel_err,
    const PrecisionContext& ctx,
    const std::function<std::optional<BigReal>(const BigReal&)>& tail_beyond) {
    const mpfr_prec_t wp = ctx.working_bits + ctx.guard_bits;
    if (peak_hint < t0) throw BadBracket("quadrature_decaying: peak_hint below t0");

    const BigReal a = peak_hint.rounded(wp);
    auto integrand_v = [&](const BigReal& v) {
        BigReal t = a * exp(v);
        return f(t) * t;  // dt = t dv
    };

    const BigReal peak_mag = abs(integrand_v(BigReal(0.0, wp)));
    const BigReal cut = peak_mag * pow2(-(long)ctx.working_bits - 20, wp);

    // Upper cutoff: beyond the peak until the integrand is negligible and the
    // analytic tail bound certifies.
    BigReal v_hi(1.0, wp);
    std::optional<BigReal> tail;
    for (int i = 0; i < 400; ++i) {
        if (abs(integrand_v(v_hi)) <= cut) {
            tail = tail_beyond(a * exp(v_hi));
            if (tail && *tail <= max(cut * v_hi * 4, peak_mag * pow2(-(long)ctx.working_bits - 4, wp)))
                break;
            tail.reset();
        }
        v_hi += BigReal(0.5, wp);
    }
    if (!tail) throw PrecisionInsufficient("quadrature_decaying: tail bound not certifiable");

    // Lower cutoff: domain edge, or where the integrand falls below the cut.
    const BigReal v_lo = log(t0.rounded(wp) / a);  // <= 0
    BigReal v_start = v_lo;
    BigReal skip_bound(0.0, wp);
    if (abs(integrand_v(v_lo)) <= cut && v_lo < BigReal(-1.0, wp)) {
        while (v_start < BigReal(-0.5, wp) &&
               abs(integrand_v(v_start + BigReal(0.25, wp))) <= cut)
            v_start += BigReal(0.25, wp);
        // single peak: on [t0, t_start] the t-integrand is below its endpoint values
        BigReal t_start = a * exp(v_start);
        skip_bound = (t_start - t0) * max(abs(f(t0.rounded(wp))), abs(f(t_start)));
    }

    const auto& rule = detail::gauss_legendre(32, wp);
    auto composite = [&](long panels) {
        BigReal total(0.0, wp);
        BigReal width = (v_hi - v_start) / panels;
        for (long p = 0; p < panels; ++p) {
            BigReal mid = v_start + width * p + width / 2;
            BigReal half = width / 2;
            BigReal acc(0.0, wp);
            for (size_t i = 0; i < rule.nodes.size(); ++i)
                acc += rule.weights[i] * integrand_v(mid + half * rule.nodes[i]);
            total += acc * half;
        }
        return total;
    };

    long panels = std::max<long>(6, (long)((v_hi - v_start).to_double() * 2) + 1);
    BigReal coarse = composite(panels);
    BigReal fine = composite(2 * panels);
    BigReal disagreement = abs(fine - coarse);
    const BigReal target = rel_err.rounded(wp) * abs(fine) / 4;
    while (disagreement > target && panels < 40000) {
        panels *= 2;
        coarse = fine;
        fine = composite(2 * panels);
        disagreement = abs(fine - coarse);
    }

    // integrand_v already carries the dt = t dv jacobian
    BigReal value = fine;
    BigReal bound = disagreement * 2 + *tail + skip_bound
                    + abs(value) * pow2(-(long)ctx.working_bits + 8, wp);
    if (!(bound <= rel_err * abs(value)) && !value.is_zero())
        throw PrecisionInsufficient("quadrature_decaying: requested relative error not met");
    return {value.rounded(ctx.working_bits), bound.rounded(ctx.working_bits)};
}

} // namespace ljensen
