#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gradwalk {

/// Point outside the region where a test function is defined, or an
/// iterate that escaped it.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid numeric parameter (p, n, epsilon, beta, h, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operator that is not defined at the given point, e.g. the normalized
/// p-Laplacian where the gradient vanishes.
class UndefinedOperatorError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Deterministic quadrature requested in a dimension without a rule.
class UnsupportedDimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Quadrature error estimate above the requested tolerance.
class ToleranceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One or more walks/paths hit their step cap.
class NonterminationError : public std::runtime_error {
public:
    NonterminationError(std::string const& what, std::uint64_t failed)
        : std::runtime_error(what), failed_(failed) {}

    std::uint64_t failed_count() const { return failed_; }

private:
    std::uint64_t failed_;
};

}  // namespace gradwalk
