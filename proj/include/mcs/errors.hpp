#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mcs {

/// Arguments outside an operation's domain (x < 2, wrong history length, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The Fermat condition x^(rho-1) == 1 (mod rho) is required but does not hold.
class ConditionUnsatisfied : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Eigenvector matrix too ill-conditioned for the requested floating-point evaluation.
class IllConditioned : public std::runtime_error {
public:
    IllConditioned(const std::string& what, double condition)
        : std::runtime_error(what), condition_(condition) {}
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

/// Malformed text input. line() is 1-based, 0 when not tied to a line.
class MalformedInput : public std::runtime_error {
public:
    MalformedInput(const std::string& what, std::size_t line)
        : std::runtime_error(what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace mcs
