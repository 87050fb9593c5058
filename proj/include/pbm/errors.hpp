#pragma once

#include <stdexcept>
#include <string>

namespace pbm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The distance table itself is malformed (non-square, asymmetric, negative).
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A numeric argument is outside its admissible range.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// An operation's documented precondition does not hold for the input.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Input data are inconsistent with the axioms (e.g. a 0/positive ratio that
/// pm1/pm2 rule out).
class AxiomViolation : public Error {
public:
    using Error::Error;
};

/// Malformed space/map/config files.
class FormatError : public Error {
public:
    using Error::Error;
};

class GenerationError : public Error {
public:
    using Error::Error;
};

} // namespace pbm
