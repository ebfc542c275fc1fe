#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace genairy {

// Argument outside the domain an operation is defined on (odd order, x out of
// envelope, k out of range, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Base for failures of a numerical method on otherwise valid input.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Quadrature or acceleration did not reach the requested tolerance.
class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Truncated series cannot deliver the requested tolerance at this x.
class RangeError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Division by a (numerically) vanishing u.
class PoleError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Short "%g" rendering of a number for error messages.
inline std::string describe(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace genairy
