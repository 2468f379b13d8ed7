#pragma once

#include <stdexcept>
#include <string>

namespace lde {

// Base class for all errors raised by this library. Scenario runners map
// ConfigError to exit code 2 and everything else to exit code 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptySector : Error {
    using Error::Error;
};

struct SectorViolation : Error {
    using Error::Error;
};

struct BasisMismatch : Error {
    using Error::Error;
};

struct TooLargeForDense : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct DegenerateGroundState : Error {
    using Error::Error;
};

struct ProjectionError : Error {
    using Error::Error;
};

struct InvalidState : Error {
    using Error::Error;
};

struct NeverEntangled : Error {
    using Error::Error;
};

struct InvalidSeparation : Error {
    using Error::Error;
};

struct InvalidGap : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace lde
