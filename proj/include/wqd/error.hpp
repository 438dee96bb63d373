#pragma once

#include <stdexcept>
#include <string>

namespace wqd {

// Base for every library error. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Matrix shapes or subsystem dimensions do not fit together.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A numerical contract failed: non-Hermitian input, negative eigenvalues,
// unnormalized distributions, parameters out of range.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A projective outcome has (numerically) zero probability.
class ZeroProbabilityError : public Error {
public:
    using Error::Error;
};

// The operation is only defined for a restricted set of dimensions
// (minimization runs over qubit PVMs only).
class UnsupportedDimensionError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// Output file could not be created or replaced.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace wqd
