#pragma once

#include <stdexcept>
#include <string>

namespace bwdecay {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative evaluation ran out of its iteration budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Adaptive scheme exhausted its budget before reaching the requested tolerance.
class ToleranceNotMet : public Error {
public:
    ToleranceNotMet(const std::string& what, double achieved_error)
        : Error(what), achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

/// No sign change found in the search interval of a root finder.
class BracketError : public Error {
public:
    using Error::Error;
};

/// |I| too small for the ratio J/I to carry any information.
class NearZeroAmplitude : public Error {
public:
    using Error::Error;
};

}  // namespace bwdecay
