#ifndef WVL_ERROR_HPP
#define WVL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wvl {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid physical/numerical parameter (eps out of range, negative dt, ...).
struct ParameterError : Error {
    using Error::Error;
};

// Two fields/grids that must match do not.
struct GridMismatch : Error {
    using Error::Error;
};

// Operation requested in a representation that does not support it.
struct RepresentationError : Error {
    using Error::Error;
};

// A quadrature truncation horizon could not be established.
struct TruncationError : Error {
    using Error::Error;
};

// Non-finite values appeared during time integration.
struct NumericalBlowup : Error {
    double t;
    explicit NumericalBlowup(const std::string& what, double time)
        : Error(what), t(time) {}
};

// Requested window exceeds the validity of the characteristic flow.
struct WindowError : Error {
    double jacobian_deviation;
    explicit WindowError(const std::string& what, double dev)
        : Error(what), jacobian_deviation(dev) {}
};

} // namespace wvl

#endif
