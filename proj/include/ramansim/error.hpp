#pragma once

#include <stdexcept>
#include <string>

namespace ramansim {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Denominator of a pole term fell below the evaluation threshold.
class SingularityError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double estimate_abs, double error_bound)
        : Error(what), estimate_abs_(estimate_abs), error_bound_(error_bound) {}
    double estimate_abs() const noexcept { return estimate_abs_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_abs_;
    double error_bound_;
};

class DegenerateInputError : public Error {
public:
    using Error::Error;
};

// Half-maximum width is ambiguous or the map has no dominant feature.
class MultiModalError : public Error {
public:
    using Error::Error;
};

}  // namespace ramansim
