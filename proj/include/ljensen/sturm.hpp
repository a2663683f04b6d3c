#pragma once

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ljensen/polynomial.hpp"

namespace ljensen {

enum class Hyperbolicity { CertifiedHyperbolic, CertifiedNotHyperbolic, Unknown };

inline const char* to_string(Hyperbolicity h) {
    switch (h) {
        case Hyperbolicity::CertifiedHyperbolic: return "CertifiedHyperbolic";
        case Hyperbolicity::CertifiedNotHyperbolic: return "CertifiedNotHyperbolic";
        case Hyperbolicity::Unknown: return "Unknown";
    }
    return "?";
}

struct HyperbolicityVerdict {
    Hyperbolicity status = Hyperbolicity::Unknown;
    long real_root_count = -1;  // with multiplicity when certified
    mpfr_prec_t precision_used = 0;
};

namespace detail {

// ----- exact rational path (all coefficient intervals have radius zero) -----

inline bool ball_poly_exact(const RealPolynomial& p) {
    for (const auto& b : p.coefficients())
        if (!b.is_exact()) return false;
    return true;
}

inline mpq_class to_mpq(const BigReal& x) {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), x.raw());
    return q;
}

using QPoly = std::vector<mpq_class>;  // low degree first, normalized

inline void qstrip(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
inline QPoly qderiv(const QPoly& p) {
    QPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * (long)i);
    return d;
}
inline QPoly qrem(QPoly a, const QPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        qstrip(a);
    }
    return a;
}
inline int qsign_at_inf(const QPoly& p, bool plus) {
    if (p.empty()) return 0;
    int s = sgn(p.back());
    if (!plus && (p.size() - 1) % 2 == 1) s = -s;
    return s;
}
inline int qsign_at(const QPoly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return sgn(acc);
}

struct SturmOutcome {
    long distinct = 0;    // distinct real roots (of p, in the window)
    long gcd_degree = 0;  // degree of gcd(p, p')
};

inline std::vector<QPoly> qsturm_chain(const QPoly& p) {
    std::vector<QPoly> chain{p, qderiv(p)};
    qstrip(chain[0]);
    qstrip(chain[1]);
    while (!chain.back().empty() && chain.back().size() > 0) {
        const QPoly& a = chain[chain.size() - 2];
        const QPoly& b = chain.back();
        if (b.empty()) break;
        QPoly r = qrem(a, b);
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

inline SturmOutcome qsturm_analyze(const QPoly& p,
                                   const std::optional<std::pair<mpq_class, mpq_class>>& window) {
    auto chain = qsturm_chain(p);
    auto variations = [&](auto sign_of) {
        int count = 0, last = 0;
        for (const auto& q : chain) {
            int s = sign_of(q);
            if (s == 0) continue;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    };
    SturmOutcome out;
    if (window) {
        out.distinct = variations([&](const QPoly& q) { return qsign_at(q, window->first); }) -
                       variations([&](const QPoly& q) { return qsign_at(q, window->second); });
    } else {
        out.distinct = variations([&](const QPoly& q) { return qsign_at_inf(q, false); }) -
                       variations([&](const QPoly& q) { return qsign_at_inf(q, true); });
    }
    out.gcd_degree = (long)chain.back().size() - 1;  // last nonzero element ~ gcd(p, p')
    if (out.gcd_degree < 0) out.gcd_degree = 0;
    return out;
}

/// real roots counted with multiplicity, via the gcd tower (exact path)
inline long qreal_roots_with_multiplicity(QPoly p) {
    long total = 0;
    while (p.size() > 1) {
        auto chain = qsturm_chain(p);
        SturmOutcome o = qsturm_analyze(p, std::nullopt);
        total += o.distinct;
        // descend into gcd(p, p') (the chain's last element up to sign)
        if (o.gcd_degree == 0) break;
        p = chain.back();
        qstrip(p);
    }
    return total;
}

// ----- interval path -----

inline std::optional<std::vector<std::vector<Ball>>> ball_sturm_chain(const RealPolynomial& p) {
    std::vector<std::vector<Ball>> chain;
    chain.push_back(p.coefficients());
    chain.push_back(p.derivative().coefficients());
    auto strip = [](std::vector<Ball>& v) -> bool {  // false: degree ambiguous
        while (!v.empty()) {
            if (v.back().mid.is_zero() && v.back().rad.is_zero()) {
                v.pop_back();
                continue;
            }
            if (v.back().contains_zero()) return false;
            break;
        }
        return true;
    };
    if (!strip(chain[0]) || !strip(chain[1])) return std::nullopt;
    while (chain.back().size() > 0) {
        const auto& a = chain[chain.size() - 2];
        const auto& b = chain.back();
        if (b.empty()) break;
        std::vector<Ball> r = a;
        while (r.size() >= b.size() && !r.empty()) {
            Ball f = r.back() / b.back();
            size_t shift = r.size() - b.size();
            for (size_t i = 0; i + 1 < b.size(); ++i)
                r[shift + i] = r[shift + i] - f * b[i];
            r.pop_back();
            if (!r.empty() && r.back().contains_zero()) {
                if (r.back().mid.is_zero() && r.back().rad.is_zero()) r.pop_back();
                else return std::nullopt;  // degree not determined by the intervals
            }
        }
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

inline std::optional<SturmOutcome> ball_sturm_analyze(
    const RealPolynomial& p, const std::optional<std::pair<BigReal, BigReal>>& window) {
    auto chain = ball_sturm_chain(p);
    if (!chain) return std::nullopt;
    bool ok = true;
    auto sign_inf = [&](const std::vector<Ball>& q, bool plus) -> int {
        auto s = q.back().sign();
        if (!s) { ok = false; return 0; }
        int v = *s;
        if (!plus && (q.size() - 1) % 2 == 1) v = -v;
        return v;
    };
    auto sign_at = [&](const std::vector<Ball>& q, const BigReal& x) -> int {
        Ball acc = q.back();
        Ball bx{x};
        for (size_t i = q.size() - 1; i-- > 0;) acc = acc * bx + q[i];
        auto s = acc.sign();
        if (!s) { ok = false; return 0; }
        return *s;
    };
    auto variations = [&](auto sign_of) {
        int count = 0, last = 0;
        for (const auto& q : *chain) {
            int s = sign_of(q);
            if (s == 0 && !ok) return -1;
            if (s == 0) continue;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    };
    SturmOutcome out;
    int lo, hi;
    if (window) {
        lo = variations([&](const auto& q) { return sign_at(q, window->first); });
        hi = variations([&](const auto& q) { return sign_at(q, window->second); });
    } else {
        lo = variations([&](const auto& q) { return sign_inf(q, false); });
        hi = variations([&](const auto& q) { return sign_inf(q, true); });
    }
    if (!ok || lo < 0 || hi < 0) return std::nullopt;
    out.distinct = lo - hi;
    out.gcd_degree = (long)chain->back().size() - 1;
    if (out.gcd_degree != 0) return std::nullopt;  // multiple roots not certifiable from intervals
    return out;
}

} // namespace detail

/// Number of distinct real roots (whole line, or inside a window); nullopt
/// when the coefficient intervals cannot decide a required sign.
inline std::optional<long> sturm_real_root_count(
    const RealPolynomial& p,
    const std::optional<std::pair<BigReal, BigReal>>& window = std::nullopt) {
    if (detail::ball_poly_exact(p)) {
        detail::QPoly q;
        for (const auto& b : p.coefficients()) q.push_back(detail::to_mpq(b.mid));
        detail::qstrip(q);
        if (q.size() <= 1) return 0;
        std::optional<std::pair<mpq_class, mpq_class>> w;
        if (window) w = {detail::to_mpq(window->first), detail::to_mpq(window->second)};
        return detail::qsturm_analyze(q, w).distinct;
    }
    auto res = detail::ball_sturm_analyze(p, window);
    if (!res) return std::nullopt;
    return res->distinct;
}

/// Certified hyperbolicity via the Sturm chain: hyperbolic iff the number of
/// distinct real roots equals deg(p) - deg(gcd(p, p')) (the number of
/// distinct complex roots). Exact-coefficient polynomials are decided over
/// the rationals; interval polynomials escalate through `refine` (typically
/// re-computing gamma records at doubled precision) before giving up.
inline HyperbolicityVerdict certify_hyperbolic(
    const RealPolynomial& p, const PrecisionContext& ctx,
    const std::function<RealPolynomial(const PrecisionContext&)>& refine = nullptr) {
    if (detail::ball_poly_exact(p)) {
        detail::QPoly q;
        for (const auto& b : p.coefficients()) q.push_back(detail::to_mpq(b.mid));
        detail::qstrip(q);
        HyperbolicityVerdict v;
        v.precision_used = ctx.working_bits;
        if (q.size() <= 1) {  // constants: no roots, vacuously hyperbolic
            v.status = Hyperbolicity::CertifiedHyperbolic;
            v.real_root_count = 0;
            return v;
        }
        auto out = detail::qsturm_analyze(q, std::nullopt);
        long deg = (long)q.size() - 1;
        if (out.distinct == deg - out.gcd_degree) {
            v.status = Hyperbolicity::CertifiedHyperbolic;
            v.real_root_count = deg;
        } else {
            v.status = Hyperbolicity::CertifiedNotHyperbolic;
            v.real_root_count = detail::qreal_roots_with_multiplicity(q);
        }
        return v;
    }

    PrecisionContext cur = ctx;
    RealPolynomial poly = p;
    for (int esc = 0;; ++esc) {
        auto res = detail::ball_sturm_analyze(poly, std::nullopt);
        if (res) {
            HyperbolicityVerdict v;
            v.precision_used = cur.working_bits;
            v.real_root_count = res->distinct;  // gcd certified 0: squarefree
            v.status = (res->distinct == poly.degree()) ? Hyperbolicity::CertifiedHyperbolic
                                                        : Hyperbolicity::CertifiedNotHyperbolic;
            return v;
        }
        if (esc >= ctx.max_escalations || !refine)
            return {Hyperbolicity::Unknown, -1, cur.working_bits};
        cur = cur.escalated();
        poly = refine(cur);
    }
}

struct ScanRow {
    std::string family;
    long d = 0;
    long n = 0;
    Hyperbolicity status = Hyperbolicity::Unknown;
    long root_count = -1;
    mpfr_prec_t bits = 0;
};

struct ScanReport {
    std::vector<ScanRow> rows;
    long exceptions = 0;  // CertifiedNotHyperbolic count
    long unknowns = 0;

    std::string to_csv() const {
        std::string out = "family,d,n,status,root_count,bits\n";
        for (const auto& r : rows)
            out += r.family + "," + std::to_string(r.d) + "," + std::to_string(r.n) + "," +
                   to_string(r.status) + "," + std::to_string(r.root_count) + "," +
                   std::to_string((long)r.bits) + "\n";
        return out;
    }
};

} // namespace ljensen
