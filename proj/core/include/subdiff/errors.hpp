#pragma once

#include <stdexcept>
#include <string>

namespace subdiff {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument lies outside its mathematical domain (Hurst exponent, masses,
// grid sizes, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Evaluation requested at a point where the expression diverges (e.g. the
// memory kernel at t = 0).
class SingularityError : public Error {
public:
    using Error::Error;
};

// A quadrature or series evaluation could not reach the requested tolerance.
// Carries the error estimate that was actually achieved.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& msg, double achieved)
        : Error(msg), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

// Malformed user-supplied data (curves, traces, option combinations).
class InputError : public Error {
public:
    using Error::Error;
};

// A Laplace abscissa falls outside the band resolvable from a tabulated
// curve; the message lists the valid range.
class BandError : public Error {
public:
    using Error::Error;
};

// Kernel recovery hit a near-zero denominator at some s.
class SingularRecoveryError : public Error {
public:
    using Error::Error;
};

// The requested covariance structure cannot be realized on the given grid
// (embedding failed beyond the fallback path).
class InfeasibleGridError : public Error {
public:
    using Error::Error;
};

// CSV parsing failure; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, long line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

} // namespace subdiff
