#pragma once

#include <stdexcept>
#include <string>

namespace degenrad {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInterval : Error {
    using Error::Error;
};

/// Quadrature failed to reach the requested tolerance.
struct NonConvergence : Error {
    using Error::Error;
};

struct InvalidDimension : Error {
    using Error::Error;
};

struct InvalidDomain : Error {
    using Error::Error;
};

/// Evaluation outside the ball (rho <= 0 or rho > R, t <= 0, ...).
struct OutOfDomain : Error {
    using Error::Error;
};

/// Datum failed validation (sign, monotonicity or integrability).
struct InvalidDatum : Error {
    using Error::Error;
};

/// Lorentz index outside the admissible range of a threshold formula.
struct InvalidIndex : Error {
    using Error::Error;
};

/// Operation only proved/defined for p >= 2.
struct UnsupportedP : Error {
    using Error::Error;
};

/// m(r) = 0 with p > 2: the factor m^((2-p)/(p-1)) in g' is singular.
struct DegenerateDerivative : Error {
    using Error::Error;
};

/// The datum is not in L^{N,infty}, so the L^infty gradient bound is void.
struct DivergentNorm : Error {
    using Error::Error;
};

/// Bad or incomplete run configuration (CLI layer).
struct ConfigError : Error {
    using Error::Error;
};

} // namespace degenrad
