#pragma once

#include <stdexcept>
#include <string>

namespace ljensen {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define LJENSEN_DEFINE_ERROR(Name)                                  \
    struct Name : Error {                                           \
        explicit Name(const std::string& msg = #Name) : Error(msg) {} \
    }

LJENSEN_DEFINE_ERROR(InvalidParams);
LJENSEN_DEFINE_ERROR(NoConvergence);
LJENSEN_DEFINE_ERROR(PrecisionInsufficient);
LJENSEN_DEFINE_ERROR(BadBracket);
LJENSEN_DEFINE_ERROR(NotFundamental);
LJENSEN_DEFINE_ERROR(NotNormalized);
LJENSEN_DEFINE_ERROR(EmptyInput);
LJENSEN_DEFINE_ERROR(Overflow);
LJENSEN_DEFINE_ERROR(NotReduced);
LJENSEN_DEFINE_ERROR(WrongDiscriminant);
LJENSEN_DEFINE_ERROR(EmptyBound);
LJENSEN_DEFINE_ERROR(NoDecayProof);
LJENSEN_DEFINE_ERROR(OddWeight);
LJENSEN_DEFINE_ERROR(InvalidEpsF);
LJENSEN_DEFINE_ERROR(Inconclusive);
LJENSEN_DEFINE_ERROR(MissingRecord);
LJENSEN_DEFINE_ERROR(CacheCorrupt);
LJENSEN_DEFINE_ERROR(NonpositiveCurvature);
LJENSEN_DEFINE_ERROR(NegativeRadicand);
LJENSEN_DEFINE_ERROR(ShiftTooLarge);
LJENSEN_DEFINE_ERROR(LeadingIntervalContainsZero);
LJENSEN_DEFINE_ERROR(DegreeMismatch);

#undef LJENSEN_DEFINE_ERROR

} // namespace ljensen
