// errors.hpp: exception types shared by the tisbm library

#pragma once

#include <stdexcept>
#include <string>

namespace tisbm {

/// Argument outside the domain of a closed-form expression.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Query that the chosen bath representation cannot answer.
class UnsupportedQuery : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Oracle matrix would exceed the configured dimension cap.
class DimensionError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Malformed parameter document.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fixed-point solve that did not reach tolerance. Carries the last iterate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_iterate, double residual)
        : std::runtime_error(what), last_iterate_(last_iterate), residual_(residual) {}

    double last_iterate() const noexcept { return last_iterate_; }
    double residual() const noexcept { return residual_; }

private:
    double last_iterate_;
    double residual_;
};

}  // namespace tisbm
