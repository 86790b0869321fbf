#pragma once

#include <stdexcept>
#include <string>

namespace mixfrob {

// Every failure the library can signal derives from Error so callers (and the
// CLI) can separate mathematical failures from malformed input.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define MIXFROB_ERROR(Name)                                  \
    struct Name : Error {                                    \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

MIXFROB_ERROR(NoSolution);
MIXFROB_ERROR(InconsistentTruncation);
MIXFROB_ERROR(DimensionMismatch);
MIXFROB_ERROR(NotFlat);
MIXFROB_ERROR(NotFullDimensional);
MIXFROB_ERROR(Unsupported);
MIXFROB_ERROR(NewtonPolytopeMismatch);
MIXFROB_ERROR(UnsupportedDimension);
MIXFROB_ERROR(NotRegular);
MIXFROB_ERROR(ZeroVector);
MIXFROB_ERROR(SplittingFails);
MIXFROB_ERROR(TransversalityFails);
MIXFROB_ERROR(ConditionsNotMet);
MIXFROB_ERROR(NotIntegrable);
MIXFROB_ERROR(GCFails);
MIXFROB_ERROR(ICFails);
MIXFROB_ERROR(FlatnessViolation);
MIXFROB_ERROR(CompatFails);
MIXFROB_ERROR(NotSmoothFan);
MIXFROB_ERROR(NotWeakFano);
MIXFROB_ERROR(CutoffTooSmall);
MIXFROB_ERROR(ParseError);
MIXFROB_ERROR(ResourceLimit);

#undef MIXFROB_ERROR

}  // namespace mixfrob
