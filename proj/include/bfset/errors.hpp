#pragma once

#include <stdexcept>
#include <string>

namespace bfset {

struct IntervalOutOfSpace : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfSpace : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroMassRestriction : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MassOutsideHypotheses : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureNonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidObservation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WrongRegime : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace bfset
