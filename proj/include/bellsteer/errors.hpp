#pragma once

#include <stdexcept>
#include <string>

namespace bellsteer {

// Raised for invalid inputs (bad correlation matrix, malformed POVM, ...).
// The CLI maps this to exit code 2.
struct validation_error : std::invalid_argument {
    explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Raised when a computation fails numerically (quadrature out of bounds,
// sampler retry budget exhausted, ...).  The CLI maps this to exit code 3.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace bellsteer
