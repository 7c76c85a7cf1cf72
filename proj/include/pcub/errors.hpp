#pragma once

#include <stdexcept>
#include <string>

namespace pcub {

// Malformed or incomplete configuration input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid input values or geometry (point outside the annulus, bad index, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A measure whose support is too small for the requested Gaussian rule.
class DegenerateMeasure : public DomainError {
public:
    DegenerateMeasure(const std::string& what, std::size_t support_size)
        : DomainError(what), support_size_(support_size) {}

    std::size_t support_size() const noexcept { return support_size_; }

private:
    std::size_t support_size_;
};

// Iterative solver or factorization failure.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace pcub
