#include <catch2/catch.hpp>

#include <cmath>

#include "ljensen/asymptotics.hpp"
#include "ljensen/gamma_cache.hpp"

using namespace ljensen;

namespace {
// closed forms of the exponentiated expansion coefficients at (m, eps, k);
// valid for exponential-kernel streams (root exponent 1) with k = 2 mu
struct ClosedForms {
    BigReal A3, A4, A5, A6;
};
ClosedForms closed_forms(long m, const BigReal& e, const BigReal& k) {
    const mpfr_prec_t p = e.prec();
    BigReal e2 = e * e, e3 = e2 * e, e4 = e3 * e, e5 = e4 * e, e6 = e5 * e;
    ClosedForms cf;
    cf.A3 = 2 * m * (e / 3 + e2 + 4 * e3 / 3) + k / 6 - BigReal(1.0, p) / 3;
    cf.A4 = -(long)m * (e / 2 + 11 * e2 / 6 + 4 * e3 + 4 * e4) - k / 8 + BigReal(0.25, p);
    cf.A5 = m * (2 * e / 5 + 5 * e2 / 3 + 14 * e3 / 3 + 8 * e4 + 32 * e5 / 5) + k / 10 -
            BigReal(0.2, p);
    // constant part: h6 + h3^2/2 gives (k^2-10k+16)/72; the commonly quoted
    // (k^2-7k+10)/36 disagrees by an m-independent 1/288-scale offset and both
    // coincide only at k = 2
    cf.A6 = m * (long)m *
                (2 * e2 / 9 + 4 * e3 / 3 + 34 * e4 / 9 + 16 * e5 / 3 + 32 * e6 / 9) +
            (k * k - 10 * k + 16) / 72 +
            m * ((10 * k - 50) * e / 90 + (30 * k - 197) * e2 / 90 + (40 * k - 530) * e3 / 90 -
                 34 * e4 / 3 - 16 * e5 - 32 * e6 / 3);
    return cf;
}
} // namespace

TEST_CASE("saddle point invariants") {
    PrecisionContext ctx(192);
    auto d4 = make_dirichlet(-4, 224);
    auto sp = saddle_point(d4, 200, ctx);
    // residual of m = (pi c/(2j) Q^(-1/(2j)) e^(L/(2j)) + (1-mu)/2) L
    BigReal pi = const_pi(224);
    BigReal resid = abs(BigReal(200.0, 224) -
                        (pi / 8 * exp(sp.L / 2) + BigReal(0.125, 224)) * sp.L);
    REQUIRE(resid < BigReal(1e-50, 224));
    REQUIRE(sp.C > 0);
    REQUIRE(abs(sp.eps_var * sp.L - 1) < BigReal(1e-50, 224));

    // asymptotic guess 2 log(m N / log(m N)) agrees to 15%; the guess drops a
    // 1/pi inside the Lambert-W argument so it overshoots the true root here
    double guess = 2 * std::log(200.0 * 4 / std::log(200.0 * 4));
    REQUIRE(std::abs(sp.L.to_double() / guess - 1) < 0.15);
    REQUIRE(sp.L.to_double() < guess);
}

TEST_CASE("saddle location grows with order") {
    PrecisionContext ctx(160);
    auto z = make_zeta(192);
    auto a100 = saddle_point(z, 100, ctx).a;
    auto a1000 = saddle_point(z, 1000, ctx).a;
    REQUIRE(a1000 / a100 > 5);
}

TEST_CASE("log expansion basic structure") {
    PrecisionContext ctx(192);
    auto d4 = make_dirichlet(-4, 224);
    auto sp = saddle_point(d4, 40, ctx);
    auto le = log_expansion(d4, sp, 8, ctx);
    REQUIRE(abs(le.h[1]) < BigReal(1e-45, 224));        // saddle condition
    REQUIRE(abs(le.h[2] + sp.C / 2) < BigReal(1e-45, 224));  // quadratic term -C/2
    REQUIRE(abs(le.C - sp.C) < BigReal(1e-45, 224));
}

TEST_CASE("correction coefficients match the closed forms") {
    PrecisionContext ctx(224);
    for (long m : {20L, 200L, 2000L}) {
        auto d4 = make_dirichlet(-4, 256);
        auto sp = saddle_point(d4, m, ctx);
        auto le = log_expansion(d4, sp, 12, ctx);
        auto cs = correction_terms(le, 6);
        auto cf = closed_forms(m, sp.eps_var.rounded(256),
                               to_bigreal(d4.k_effective(), 256));
        REQUIRE(abs(cs.A[3] - cf.A3) < abs(cf.A3) * pow2(-40, 256));
        REQUIRE(abs(cs.A[4] - cf.A4) < abs(cf.A4) * pow2(-40, 256));
        REQUIRE(abs(cs.A[5] - cf.A5) < abs(cf.A5) * pow2(-40, 256));
        REQUIRE(abs(cs.A[6] - cf.A6) < abs(cf.A6) * pow2(-40, 256));
    }
}

TEST_CASE("all-zero cubic input gives factor one") {
    LogExpansion le;
    le.h.assign(13, BigReal(0.0, 192));
    le.C = BigReal(7.0, 192);
    le.h[2] = -le.C / 2;
    auto cs = correction_terms(le, 6);
    REQUIRE(cs.factor(6) == 1L);
}

TEST_CASE("two-term variants and reference values") {
    PrecisionContext ctx(256);
    auto d4 = make_dirichlet(-4, 288);

    BigReal g10_cal = gamma_hat(d4, 10, B1Variant::Calibrated, ctx);
    BigReal expect = BigReal::from_string("8.6123842782e-14", 288);
    REQUIRE(abs(g10_cal - expect) < expect * BigReal(1e-9, 288));

    BigReal g10_fam = gamma_hat(d4, 10, B1Variant::Family, ctx);
    BigReal g10_gen = gamma_hat(d4, 10, B1Variant::General, ctx);
    REQUIRE(g10_fam != g10_cal);
    REQUIRE(abs(g10_gen / g10_cal - 1) > BigReal(1.0, 288));  // Thm-2 print is far off
    // the printed family form is close but distinct (0.3% here)
    REQUIRE(abs(g10_fam / g10_cal - 1) < BigReal(0.01, 288));
    REQUIRE(abs(g10_fam / g10_cal - 1) > BigReal(1e-4, 288));
}

TEST_CASE("two-term value far in the asymptotic regime") {
    PrecisionContext ctx(256);
    auto d4 = make_dirichlet(-4, 288);
    BigReal g = gamma_hat(d4, 100000, B1Variant::Calibrated, ctx);
    BigReal expect = BigReal::from_string("8.1291531304e-384416", 320);
    REQUIRE(abs(g - expect) < expect * BigReal(1e-8, 320));

    // the Family closed form is the true 1/m coefficient: it lands closer to
    // the exact value than the table-calibrated variant does out here
    auto exact = taylor_gamma(d4, 100000, ctx);
    BigReal gf = gamma_hat(d4, 100000, B1Variant::Family, ctx);
    REQUIRE(abs(gf / exact.value - 1) < abs(g / exact.value - 1));
    REQUIRE(abs(gf / exact.value - 1) < BigReal(1e-7, 320));
}

TEST_CASE("hermite-jensen normalizers match the odd-character instantiation") {
    PrecisionContext ctx(224);
    auto d4 = make_dirichlet(-4, 256);
    long n = 50, m = 2 * n;
    auto hj = hj_normalizers(d4, n, ctx);
    auto sp = saddle_point(d4, m, ctx);
    BigReal L = sp.L.rounded(256), L2 = L * L;
    BigReal C = 2 * n * (2 / L + 4 / L2) - BigReal(0.25, 256);
    REQUIRE(abs(C - sp.C) < BigReal(1e-40, 256));
    BigReal A = log(L2 / (64 * n)) + 2 * (L - 2) / (C * L2) + 16 * n * (L + 4) / (C * C * L2 * L2);
    BigReal delta = sqrt(BigReal(1.0, 256) / (2 * n) - 8 / (C * L2));
    REQUIRE(abs(hj.A - A) < BigReal(1e-40, 256));
    REQUIRE(abs(hj.delta - delta) < BigReal(1e-40, 256));
}

TEST_CASE("delta decreases along the table rows") {
    PrecisionContext ctx(160);
    auto d4 = make_dirichlet(-4, 192);
    auto d100 = hj_normalizers(d4, 100, ctx).delta;
    auto d1000 = hj_normalizers(d4, 1000, ctx).delta;
    auto d10000 = hj_normalizers(d4, 10000, ctx).delta;
    REQUIRE(d10000 < d1000);
    REQUIRE(d1000 < d100);
}

TEST_CASE("ratio diagnostics") {
    PrecisionContext ctx(192);
    auto d4 = make_dirichlet(-4, 224);
    long n = 1000, m = 2000;
    auto d = ratio_diagnostics(d4, n, 2, ctx);
    auto sp = saddle_point(d4, m, ctx);
    // printed-form identity l1 * (C/4) * L^2 = 2, exact by construction
    REQUIRE(abs(d.l1 * (sp.C / 4) * sp.L * sp.L - 2) < BigReal(1e-40, 224));
    REQUIRE(d.l2 < 0);
    REQUIRE_THROWS_AS(ratio_diagnostics(d4, 4, 4, ctx), ShiftTooLarge);

    // log R_gamma(j) is approximated by g1 j + g2 j^2 up to o(1/m)
    for (long j : {1L, 2L, 3L}) {
        auto dj = ratio_diagnostics(d4, n, j, ctx);
        BigReal fit = d.g1 * j + d.g2 * j * j;
        BigReal resid = abs(log(dj.R_gamma) - fit);
        REQUIRE(resid < BigReal(40.0 / (double)m, 224));  // o(1/m) scale with slack
    }

    // and R_gamma itself tracks the two-term ratio
    BigReal direct = gamma_hat(d4, n + 2, B1Variant::Calibrated, ctx) /
                     gamma_hat(d4, n, B1Variant::Calibrated, ctx);
    REQUIRE(abs(d.R_gamma / direct - 1) < BigReal(1e-5, 224));
}

TEST_CASE("asymptotic_F approaches the exact integral") {
    PrecisionContext ctx(224);
    auto d4 = make_dirichlet(-4, 256);
    BigReal f20 = asymptotic_F(d4, 20, 3, ctx);
    auto exact = central_f(d4, 20, ctx);
    REQUIRE(abs(f20 / exact.value - 1) < BigReal(0.05, 256));

    // order-3 truncation error at this depth sits at the next-order 1/m^2 scale
    BigReal f2000 = asymptotic_F(d4, 2000, 3, ctx);
    auto exact2 = central_f(d4, 2000, ctx);
    REQUIRE(abs(f2000 / exact2.value - 1) < BigReal(1e-4, 256));

    // order 3 beats order 2 deep in the asymptotic regime
    BigReal o2 = asymptotic_F(d4, 2000, 2, ctx);
    REQUIRE(abs(f2000 / exact2.value - 1) < abs(o2 / exact2.value - 1));
}

TEST_CASE("log-ratio growth matches the normalizers (Hermite-Jensen property)") {
    // log(gamma(n+j)/gamma(n)) - (A(n) j - delta(n)^2 j^2) shrinks as n grows
    PrecisionContext ctx(224);
    for (int which = 0; which < 2; ++which) {
        LFamily fam = which == 0 ? make_dirichlet(-4, 256) : make_zeta(256);
        BigReal worst_small(0.0, 256), worst_large(0.0, 256);
        for (long n : {100L, 1000L}) {
            auto recs = gamma_range(fam, n, n + 4, ctx, nullptr);
            auto hj = hj_normalizers(fam, n, ctx);
            BigReal worst(0.0, 256);
            for (long j = 1; j <= 4; ++j) {
                BigReal lhs = log(recs[(size_t)j].value / recs[0].value);
                BigReal rhs = hj.A * j - hj.delta * hj.delta * j * j;
                worst = max(worst, abs(lhs - rhs));
            }
            (n == 100 ? worst_small : worst_large) = worst;
        }
        INFO(fam.name);
        REQUIRE(worst_large < worst_small);
        REQUIRE(worst_small < BigReal(0.05, 256));
        REQUIRE(worst_large < BigReal(0.005, 256));
    }
}

TEST_CASE("normalizers work for the modular family too") {
    PrecisionContext ctx(224);
    auto z = eta_product({{1, 2}, {11, 2}}, 400);
    std::vector<BigReal> coeffs;
    for (auto& c : z) coeffs.push_back(to_bigreal(c, 256));
    auto fam = make_modular(11, 2, coeffs, -1, 256);
    long n = 120;
    auto recs = gamma_range(fam, n, n + 3, ctx, nullptr);
    auto hj = hj_normalizers(fam, n, ctx);
    BigReal worst(0.0, 256);
    for (long j = 1; j <= 3; ++j) {
        BigReal lhs = log(recs[(size_t)j].value / recs[0].value);
        BigReal rhs = hj.A * j - hj.delta * hj.delta * j * j;
        worst = max(worst, abs(lhs - rhs));
    }
    REQUIRE(worst < BigReal(0.05, 256));
}

TEST_CASE("two-term ratio for the pole family") {
    // zeta feeds Fhat(2n-2); the neglected second exact term decays like
    // L^2/n so the ratio approaches 1 from one side
    PrecisionContext ctx(224);
    auto z = make_zeta(256);
    BigReal prev_err(1e9, 256);
    for (long n : {50L, 200L, 800L}) {
        BigReal gh = gamma_hat(z, n, B1Variant::Family, ctx);
        auto rec = taylor_gamma(z, n, ctx);
        BigReal err = abs(rec.value / gh - 1);
        REQUIRE(err < prev_err);
        prev_err = err;
    }
    REQUIRE(prev_err < BigReal(0.01, 256));
}

TEST_CASE("error-decay law for the order-2 evaluation") {
    PrecisionContext ctx(224);
    auto d4 = make_dirichlet(-4, 256);
    BigReal prev(1e9, 256);
    for (long m : {20L, 200L, 2000L}) {
        BigReal approx = asymptotic_F(d4, m, 2, ctx);
        auto exact = central_f(d4, m, ctx);
        BigReal err = abs(approx / exact.value - 1);
        REQUIRE(err < prev);
        prev = err;
    }
}

TEST_CASE("square-root kernel family runs through the asymptotic machinery") {
    // the Dedekind streams decay in sqrt(t); curvature and normalizers differ
    // from the exponential-kernel families but the pipeline is the same
    PrecisionContext ctx(224);
    auto K = make_dedekind(-4, 256);
    auto sp = saddle_point(K, 100, ctx);
    REQUIRE(sp.C > 0);
    // the sqrt kernel contributes to every expansion order, so convergence in
    // m is slower than for exponential kernels; check the trend at order 3
    BigReal prev(1e9, 256);
    for (long m : {100L, 400L, 2000L}) {
        BigReal approx = asymptotic_F(K, m, 3, ctx);
        auto exact = central_f(K, m, ctx);
        BigReal err = abs(approx / exact.value - 1);
        REQUIRE(err < prev);
        prev = err;
    }
    REQUIRE(prev < BigReal(1e-3, 256));

    BigReal gh = gamma_hat(K, 60, B1Variant::Family, ctx);
    auto rec = taylor_gamma(K, 60, ctx);
    REQUIRE(rec.value > 0);
    REQUIRE(abs(rec.value / gh - 1) < BigReal(0.2, 256));
}

TEST_CASE("normalizer radicand guard") {
    PrecisionContext ctx(160);
    auto d4 = make_dirichlet(-4, 192);
    REQUIRE_THROWS_AS(hj_normalizers(d4, 1, ctx), NegativeRadicand);
}

TEST_CASE("parity zero and curvature guard") {
    PrecisionContext ctx(160);
    auto d4 = make_dirichlet(-4, 192);
    REQUIRE(asymptotic_F(d4, 7, 2, ctx).is_zero());
    REQUIRE(two_term_Fhat(d4, 7, B1Variant::Calibrated, ctx).is_zero());
}
