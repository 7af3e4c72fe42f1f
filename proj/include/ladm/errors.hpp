#pragma once

#include <stdexcept>
#include <string>

namespace ladm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shapes or index ranges that do not fit together.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A documented precondition of a construction does not hold (e.g. an angle of pi/2).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Random input is not in general position (rank deficiency where full rank is required).
class GenericityError : public Error {
public:
    using Error::Error;
};

// Matrix outside the domain of a bound (missing eigen-gap, negative eigenvalue, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace ladm
