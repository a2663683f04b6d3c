#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ljensen/bigreal.hpp"
#include "ljensen/error.hpp"
#include "ljensen/kronecker.hpp"
#include "ljensen/precision.hpp"

namespace ljensen {

struct ThetaTerm {
    BigReal c;      // positive exponent constant
    BigReal alpha;  // merged coefficient
};

/// Decay certificate for a term stream: |alpha(c)| <= poly_coef * c^poly_deg,
/// and any interval of length min_gap holds at most one term. Enough to
/// majorize tails by a geometric comparison.
struct GrowthCertificate {
    double poly_deg = 0.0;
    double poly_coef = 1.0;
    double min_gap = 1.0;
    bool present = true;
};

/// The exponential series f(t) = alpha0 + sum_m alpha_m e^(-pi c_m t^(1/j)).
/// Terms are produced lazily through an extender that must return ALL terms
/// with c <= bound, strictly ascending in c, equal-c coefficients merged.
/// Extension is append-only behind a mutex; readers take an immutable
/// snapshot, so concurrent readers always observe a consistent prefix.
class ThetaTermStream {
public:
    using Extender = std::function<std::vector<ThetaTerm>(const BigReal& c_bound)>;

    ThetaTermStream() = default;
    ThetaTermStream(unsigned root_exponent, BigReal alpha0, Extender extender,
                    GrowthCertificate growth, std::string id,
                    double coverage_limit = 0.0 /* 0: unlimited */)
        : impl_(std::make_shared<Impl>()) {
        impl_->j = root_exponent;
        impl_->alpha0 = std::move(alpha0);
        impl_->extender = std::move(extender);
        impl_->growth = growth;
        impl_->id = std::move(id);
        impl_->coverage_limit = coverage_limit;
    }

    unsigned root_exponent() const { return impl_->j; }
    const BigReal& alpha0() const { return impl_->alpha0; }
    const GrowthCertificate& growth() const { return impl_->growth; }
    const std::string& id() const { return impl_->id; }

    /// All terms with c <= bound (complete by the extender contract).
    std::shared_ptr<const std::vector<ThetaTerm>> terms_up_to(const BigReal& bound) const {
        std::lock_guard<std::mutex> lock(impl_->mu);
        double b = bound.to_double();
        if (impl_->coverage_limit > 0 && b > impl_->coverage_limit)
            throw InvalidParams("ThetaTermStream '" + impl_->id +
                                "': requested c bound exceeds available coefficients");
        if (!impl_->snapshot || impl_->cached_bound < b) {
            double grow = std::max(b * 1.5, impl_->cached_bound * 2 + 1);
            if (impl_->coverage_limit > 0) grow = std::min(grow, impl_->coverage_limit);
            auto terms = impl_->extender(BigReal(grow, 64));
            impl_->snapshot = std::make_shared<const std::vector<ThetaTerm>>(std::move(terms));
            impl_->cached_bound = grow;
        }
        if (impl_->cached_bound == b && b == impl_->coverage_limit) return impl_->snapshot;
        auto all = impl_->snapshot;
        auto out = std::make_shared<std::vector<ThetaTerm>>();
        for (const auto& t : *all) {
            if (t.c > bound) break;
            out->push_back(t);
        }
        return out;
    }

    double coverage_limit() const { return impl_->coverage_limit; }

    /// First `count` terms (fewer when the stream's coverage runs out first).
    std::shared_ptr<const std::vector<ThetaTerm>> prefix(size_t count) const {
        for (double b = 16;; b *= 4) {
            bool capped = impl_->coverage_limit > 0 && b >= impl_->coverage_limit;
            if (capped) b = impl_->coverage_limit;
            auto ts = terms_up_to(BigReal(b, 64));
            if (ts->size() >= count || capped || b > 1e15) {
                if (ts->size() <= count) return ts;
                auto out = std::make_shared<std::vector<ThetaTerm>>(ts->begin(),
                                                                    ts->begin() + count);
                return out;
            }
        }
    }

    BigReal c_min() const {
        for (double b = 4;; b *= 4) {
            if (impl_->coverage_limit > 0) b = std::min(b, impl_->coverage_limit);
            auto ts = terms_up_to(BigReal(b, 64));
            if (!ts->empty()) return ts->front().c;
            if (impl_->coverage_limit > 0 && b >= impl_->coverage_limit)
                throw EmptyBound("ThetaTermStream '" + impl_->id + "' has no terms in coverage");
            if (b > 1e12) throw EmptyBound("ThetaTermStream '" + impl_->id + "' produced no terms");
        }
    }
    BigReal alpha_min() const {
        auto ts = terms_up_to(c_min());
        return ts->front().alpha;
    }

    /// Certified bound on sum_{c >= C} |alpha| e^(-pi c t0^(1/j)), valid once
    /// C >= 2*poly_deg/beta with beta = pi t0^(1/j); grows C internally if not.
    BigReal tail_majorant(const BigReal& C_from, const BigReal& t0, mpfr_prec_t prec) const {
        const auto& g = impl_->growth;
        if (!g.present)
            throw NoDecayProof("ThetaTermStream '" + impl_->id + "': no growth certificate");
        BigReal beta = const_pi(prec) * rootn(t0.rounded(prec), impl_->j);
        BigReal C = C_from.rounded(prec);
        BigReal floorC = BigReal(2 * g.poly_deg, prec) / beta + BigReal(1.0, prec);
        if (C < floorC) C = floorC;
        // one term per min_gap and per-term majorant decays at rate >= beta/2
        BigReal density = 1 + 2 / (beta * BigReal(g.min_gap, prec));
        return BigReal(g.poly_coef, prec) * pow(C, BigReal(g.poly_deg, prec)) *
               exp(-beta * C) * density;
    }

private:
    struct Impl {
        unsigned j = 1;
        BigReal alpha0;
        Extender extender;
        GrowthCertificate growth;
        std::string id;
        double coverage_limit = 0;
        mutable std::mutex mu;
        mutable std::shared_ptr<const std::vector<ThetaTerm>> snapshot;
        mutable double cached_bound = 0;
    };
    std::shared_ptr<Impl> impl_;
};

/// psi(t) = sum_{m>=1} e^(-pi m^2 t): c = m^2, alpha = 1. alpha0 carries the
/// theta(t)/2 convention; the pole record of the zeta family supplies the rest.
inline ThetaTermStream riemann_stream(mpfr_prec_t prec = 256) {
    auto ext = [prec](const BigReal& bound) {
        std::vector<ThetaTerm> out;
        double b = bound.to_double();
        for (long m = 1; (double)m * m <= b; ++m)
            out.push_back({BigReal((double)m * m, prec), BigReal(1.0, prec)});
        return out;
    };
    return ThetaTermStream(1, BigReal(0.5, prec), ext, {0.0, 1.0, 1.0}, "riemann");
}

/// Half the twisted theta series: sum chi(r) r^nu e^(-pi r^2 t).
inline ThetaTermStream dirichlet_stream(const DirichletCharacterSpec& spec, mpfr_prec_t prec = 256) {
    long D = spec.D;
    int nu = spec.nu;
    auto ext = [D, nu, prec](const BigReal& bound) {
        std::vector<ThetaTerm> out;
        double b = bound.to_double();
        for (long r = 1; (double)r * r <= b; ++r) {
            int chi = kronecker_symbol(D, r);
            if (chi == 0) continue;
            BigReal alpha((double)chi, prec);
            if (nu == 1) alpha = alpha * r;
            out.push_back({BigReal((double)r * r, prec), alpha});
        }
        return out;
    };
    // |alpha| = r^nu = c^(nu/2); gaps between consecutive squares are >= 3
    return ThetaTermStream(1, BigReal(0.0, prec), ext, {nu / 2.0, 1.0, 3.0},
                           "dirichlet[" + std::to_string(D) + "]");
}

/// Cusp-form series sum a(n) e^(-2 pi n t): c = 2n, alpha = a(n). Coverage is
/// limited by the number of supplied coefficients.
inline ThetaTermStream modular_stream(const std::vector<BigReal>& coefficients, long weight,
                                      mpfr_prec_t prec = 256) {
    if (coefficients.empty()) throw EmptyInput("modular_stream: no coefficients");
    if (!(coefficients[0] == 1))
        throw NotNormalized("modular_stream: a(1) must equal 1");
    auto coeffs = std::make_shared<std::vector<BigReal>>(coefficients);
    auto ext = [coeffs, prec](const BigReal& bound) {
        std::vector<ThetaTerm> out;
        double b = bound.to_double();
        for (size_t i = 0; i < coeffs->size(); ++i) {
            double c = 2.0 * (double)(i + 1);
            if (c > b) break;
            if ((*coeffs)[i].is_zero()) continue;
            out.push_back({BigReal(c, prec), (*coeffs)[i].rounded(prec)});
        }
        return out;
    };
    // Deligne-type |a(n)| <= d(n) n^((w-1)/2) <= n^((w+1)/2) = (c/2)^((w+1)/2)
    double deg = (weight + 1) / 2.0;
    GrowthCertificate g{deg, std::pow(0.5, deg), 2.0};
    return ThetaTermStream(1, BigReal(0.0, prec), ext, g, "modular",
                           2.0 * (double)coefficients.size());
}

struct TruncationResult {
    size_t term_count;   // terms to keep
    BigReal tail_bound;  // certified bound on the discarded sum at t0
};

/// Smallest prefix whose discarded tail at t0 is provably below threshold.
inline TruncationResult truncation_index(const ThetaTermStream& stream, const BigReal& t0,
                                         const BigReal& threshold, mpfr_prec_t prec = 256) {
    if (!(threshold > 0)) throw InvalidParams("truncation_index: threshold must be positive");
    BigReal full = stream.tail_majorant(stream.c_min(), t0, prec);
    if (full <= threshold) return {0, full};
    for (double b = 16;; b *= 2) {
        auto terms = stream.terms_up_to(BigReal(b, 64));
        for (size_t M = 0; M < terms->size(); ++M) {
            BigReal from_c = (M + 1 < terms->size()) ? (*terms)[M + 1].c
                                                     : (*terms)[M].c + BigReal(stream.growth().min_gap, prec);
            BigReal tail = stream.tail_majorant(from_c, t0, prec);
            if (tail <= threshold && M + 1 < terms->size()) return {M + 1, tail};
            if (tail <= threshold) return {M + 1, tail};
        }
        if (b > 1e9) throw NoDecayProof("truncation_index: threshold unreachable");
    }
}

/// Coefficient ingestion: CSV with header `n,a_n`, 1-indexed, no gaps or
/// duplicates, exact integer or decimal entries.
inline std::vector<BigReal> load_coefficient_csv(const std::string& path, mpfr_prec_t prec = 256) {
    std::ifstream in(path);
    if (!in) throw InvalidParams("cannot open coefficient file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw EmptyInput("empty coefficient file: " + path);
    auto strip = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
    };
    if (strip(line) != "n,a_n")
        throw InvalidParams("coefficient file must start with header 'n,a_n'");
    std::vector<BigReal> out;
    long expected = 1;
    while (std::getline(in, line)) {
        line = strip(line);
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw InvalidParams("bad coefficient row: " + line);
        long n = std::stol(strip(line.substr(0, comma)));
        if (n != expected)
            throw InvalidParams("coefficient rows must be 1-indexed and gap-free; saw n=" +
                                std::to_string(n) + " expected " + std::to_string(expected));
        out.push_back(BigReal::from_string(strip(line.substr(comma + 1)), prec));
        ++expected;
    }
    if (out.empty()) throw EmptyInput("no coefficient rows in " + path);
    return out;
}

} // namespace ljensen
