#pragma once

#include <vector>

#include "ljensen/gamma_cache.hpp"
#include "ljensen/sturm.hpp"

namespace ljensen {

/// Hyperbolicity verdicts of J^(d,n) over a set of degrees and a shift range.
/// Deterministic; gamma evaluation parallelizes through gamma_range.
inline ScanReport hyperbolicity_scan(const LFamily& fam, const std::vector<long>& d_set,
                                     long n_lo, long n_hi, const PrecisionContext& ctx,
                                     GammaCache* cache = nullptr, unsigned workers = 1) {
    ScanReport report;
    if (d_set.empty() || n_lo > n_hi) return report;
    long dmax = *std::max_element(d_set.begin(), d_set.end());
    auto records = gamma_range(fam, n_lo, n_hi + dmax, ctx, cache, workers);

    for (long d : d_set) {
        for (long n = n_lo; n <= n_hi; ++n) {
            auto poly = jensen_polynomial(records, d, n, ctx.working_bits);
            auto refine = [&](const PrecisionContext& finer) {
                auto recs = gamma_range(fam, n, n + d, finer, cache, workers);
                return jensen_polynomial(recs, d, n, finer.working_bits);
            };
            auto verdict = certify_hyperbolic(poly, ctx, refine);
            ScanRow row{fam.name, d, n, verdict.status, verdict.real_root_count,
                        verdict.precision_used};
            if (verdict.status == Hyperbolicity::CertifiedNotHyperbolic) ++report.exceptions;
            if (verdict.status == Hyperbolicity::Unknown) ++report.unknowns;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

} // namespace ljensen
