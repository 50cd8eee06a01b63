#pragma once

#include <stdexcept>
#include <string>

namespace gnsbound {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes (2 for bad input, 3 for numerical accuracy).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class Inadmissible : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class SizeError : public Error {
public:
    using Error::Error;
};

class TripleMismatch : public Error {
public:
    using Error::Error;
};

// Hypothesis violation for a smoothing estimate (r > p, or the
// Sobolev endpoint for negative order).
class InvalidRegime : public Error {
public:
    using Error::Error;
};

class Infeasible : public Error {
public:
    using Error::Error;
};

class EmptyFeasible : public Error {
public:
    using Error::Error;
};

class AccuracyError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace gnsbound
