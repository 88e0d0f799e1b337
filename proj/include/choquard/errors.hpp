#pragma once
#include <stdexcept>
#include <string>

namespace choquard {

// Invalid parameters, malformed configs, geometry violations. CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation that ran but failed its accuracy contract
// (quadrature tolerance, dual-path disagreement, imaginary residue). CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Iterative procedures that exhausted their budget. CLI exit code 4.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace choquard
