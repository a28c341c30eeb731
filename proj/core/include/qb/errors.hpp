#pragma once

#include <stdexcept>
#include <string>

namespace qb {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent input (files, schemas, parameter ranges).
struct InputError : Error {
    explicit InputError(const std::string& msg) : Error(msg) {}
};

/// A decimal alpha was given with too few digits to decide a comparison.
struct PrecisionError : Error {
    explicit PrecisionError(const std::string& msg) : Error(msg) {}
};

/// Numerical failure (solver non-convergence, singular system, ...).
struct NumericError : Error {
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

} // namespace qb
