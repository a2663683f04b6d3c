#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "ljensen/bigreal.hpp"
#include "ljensen/error.hpp"
#include "ljensen/kronecker.hpp"
#include "ljensen/theta.hpp"

namespace ljensen {

/// Integral binary quadratic form a x^2 + b xy + c y^2.
struct QuadForm {
    long a, b, c;
    long discriminant() const { return b * b - 4 * a * c; }
    bool is_reduced() const {
        if (a <= 0 || c <= 0) return false;
        if (std::labs(b) > a || a > c) return false;
        if ((std::labs(b) == a || a == c) && b < 0) return false;
        return true;
    }
    long eval(long x, long y) const { return a * x * x + b * x * y + c * y * y; }
};

/// All reduced forms of a negative discriminant: the classical sweep |b| <= a <= c.
inline std::vector<QuadForm> reduced_forms(long D) {
    if (D >= 0) throw InvalidParams("reduced_forms: discriminant must be negative");
    if ((((D % 4) + 4) % 4) != 0 && (((D % 4) + 4) % 4) != 1)
        throw InvalidParams("reduced_forms: discriminant must be 0 or 1 mod 4");
    std::vector<QuadForm> out;
    long bmax = (long)std::sqrt((double)(-D) / 3.0) + 1;
    for (long b = -bmax; b <= bmax; ++b) {
        if (((b * b - D) % 4) != 0) continue;
        long ac = (b * b - D) / 4;
        for (long a = std::max(1L, std::labs(b)); a * a <= ac; ++a) {
            if (ac % a != 0) continue;
            QuadForm f{a, b, ac / a};
            if (f.is_reduced() && f.discriminant() == D) out.push_back(f);
        }
    }
    // canonical order: by a, then b
    std::sort(out.begin(), out.end(), [](const QuadForm& x, const QuadForm& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    return out;
}

inline long class_number(long D) { return (long)reduced_forms(D).size(); }

/// Number of roots of unity in the imaginary quadratic field of discriminant D.
inline long quad_unit_count(long D) { return D == -3 ? 6 : (D == -4 ? 4 : 2); }

/// Representation counts of the form: value -> #{(x,y) != 0 : Q(x,y) = value}.
inline std::map<long, long> form_representation_counts(const QuadForm& f, long value_bound) {
    std::map<long, long> counts;
    long D = f.discriminant();
    double ylim = std::sqrt(4.0 * f.a * value_bound / (double)(-D)) + 1;
    for (long y = -(long)ylim; y <= (long)ylim; ++y) {
        // a x^2 + b x y + (c y^2 - V) <= 0
        double disc = (double)f.b * f.b * y * y - 4.0 * f.a * (f.c * (double)y * y - value_bound);
        if (disc < 0) continue;
        double root = std::sqrt(disc);
        long xlo = (long)std::floor((-(double)f.b * y - root) / (2.0 * f.a)) - 1;
        long xhi = (long)std::ceil((-(double)f.b * y + root) / (2.0 * f.a)) + 1;
        for (long x = xlo; x <= xhi; ++x) {
            if (x == 0 && y == 0) continue;
            long v = f.eval(x, y);
            if (v >= 1 && v <= value_bound) counts[v]++;
        }
    }
    return counts;
}

/// Theta term stream of one ideal class of Q(sqrt(D)), D < 0 fundamental:
/// j = 2, alpha0 = 1/w_K, and for each represented value V of the reduced
/// form a term with c = 2 V / sqrt(|D|) and alpha = (#representations)/w_K.
/// `bound` is the smallest c coverage the stream must reach (it extends
/// lazily beyond it on demand).
inline ThetaTermStream quad_ideal_stream(long D, const QuadForm& form, double bound,
                                         mpfr_prec_t prec = 4096) {
    if (!is_fundamental_discriminant(D) || D >= 0)
        throw NotFundamental("quad_ideal_stream: need a negative fundamental discriminant");
    if (form.discriminant() != D)
        throw WrongDiscriminant("quad_ideal_stream: form discriminant mismatch");
    if (!form.is_reduced()) throw NotReduced("quad_ideal_stream: form not reduced");
    if (!(bound > 0)) throw EmptyBound("quad_ideal_stream: bound must be positive");

    const long w = quad_unit_count(D);
    QuadForm f = form;
    const double sqrtD = std::sqrt((double)-D);
    auto ext = [f, w, D, prec](const BigReal& c_bound) {
        // c = 2 V / sqrt(|D|)  =>  V <= c_bound sqrt(|D|) / 2
        double b = c_bound.to_double() * std::sqrt((double)-D) / 2.0 + 1;
        auto counts = form_representation_counts(f, (long)b);
        BigReal sq = sqrt(BigReal((double)-D, prec));
        std::vector<ThetaTerm> out;
        out.reserve(counts.size());
        for (auto [v, cnt] : counts)
            out.push_back({BigReal(2.0 * (double)v, prec) / sq,
                           BigReal((double)cnt, prec) / w});
        return out;
    };
    // representations of V are at most ~8 sqrt(V) lattice points; V = c sqrt(|D|)/2
    GrowthCertificate g;
    g.poly_deg = 0.5;
    g.poly_coef = 10.0 * std::sqrt(sqrtD / 2.0) / (double)w;
    g.min_gap = 2.0 / sqrtD;
    ThetaTermStream s(2, BigReal(1.0, prec) / w, ext, g,
                      "quad[" + std::to_string(D) + "," + std::to_string(form.a) + "," +
                          std::to_string(form.b) + "," + std::to_string(form.c) + "]");
    if (s.terms_up_to(BigReal(bound, 64))->empty())
        throw EmptyBound("quad_ideal_stream: no lattice point below bound");
    return s;
}

} // namespace ljensen
