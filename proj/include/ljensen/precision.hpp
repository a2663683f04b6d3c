#pragma once

#include <mpfr.h>

#include "ljensen/error.hpp"

namespace ljensen {

/// Controls the binary precision of every intermediate operation and how
/// aggressively certification failures may escalate it.
struct PrecisionContext {
    mpfr_prec_t working_bits = 256;
    mpfr_prec_t guard_bits = 32;
    int max_escalations = 4;

    PrecisionContext() = default;
    PrecisionContext(mpfr_prec_t wb, mpfr_prec_t gb = 32, int esc = 4)
        : working_bits(wb), guard_bits(gb), max_escalations(esc) {
        if (working_bits < 64 || guard_bits < 16)
            throw InvalidParams("PrecisionContext: working_bits >= 64 and guard_bits >= 16 required");
    }

    /// Context with doubled working precision (same guard, one less escalation left).
    PrecisionContext escalated() const {
        PrecisionContext c(*this);
        c.working_bits *= 2;
        return c;
    }

    static PrecisionContext from_digits(long decimal_digits, mpfr_prec_t gb = 32) {
        if (decimal_digits < 10) throw InvalidParams("at least 10 decimal digits required");
        auto wb = static_cast<mpfr_prec_t>(decimal_digits * 3.33) + gb;
        if (wb < 64) wb = 64;
        return PrecisionContext(wb, gb);
    }
};

} // namespace ljensen
