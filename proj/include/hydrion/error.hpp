#pragma once

#include <stdexcept>
#include <string>

namespace hydrion {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define HYDRION_DEFINE_ERROR(Name)                \
    class Name : public Error {                   \
    public:                                       \
        using Error::Error;                       \
    }

// model
HYDRION_DEFINE_ERROR(InvalidParameter);
HYDRION_DEFINE_ERROR(NoEquilibria);

// ode
HYDRION_DEFINE_ERROR(StepSizeUnderflow);
HYDRION_DEFINE_ERROR(IndeterminateTerminal);

// specfun
HYDRION_DEFINE_ERROR(BadParameter);
HYDRION_DEFINE_ERROR(NonConvergence);
HYDRION_DEFINE_ERROR(DomainError);
HYDRION_DEFINE_ERROR(PoleError);
HYDRION_DEFINE_ERROR(DegenerateThreshold);

// roots
HYDRION_DEFINE_ERROR(CountMismatch);
HYDRION_DEFINE_ERROR(ValidationFailure);
HYDRION_DEFINE_ERROR(TableTooShort);

// spectrum
HYDRION_DEFINE_ERROR(EnergyTooCloseToContinuum);
HYDRION_DEFINE_ERROR(BracketFailure);
HYDRION_DEFINE_ERROR(ThresholdDegenerate);
HYDRION_DEFINE_ERROR(NonNormalizable);
HYDRION_DEFINE_ERROR(OrderingViolation);

// io
HYDRION_DEFINE_ERROR(IoError);

#undef HYDRION_DEFINE_ERROR

}  // namespace hydrion
