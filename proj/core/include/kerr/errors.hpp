#pragma once

#include <stdexcept>
#include <string>

namespace kerr {

// A configuration or argument violates a documented precondition.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// An evaluation cannot meet its accuracy contract (budget exhausted,
// non-finite sample, residual out of bounds, near-singular denominator).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kerr
