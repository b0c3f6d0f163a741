#pragma once

#include <stdexcept>
#include <string>

namespace rankone {

// Gamma-type pole (argument at a non-positive integer) or kernel singular locus.
struct PoleError : std::runtime_error {
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

// Series or integral evaluated outside its convergence region.
struct DivergenceError : std::runtime_error {
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Quadrature failed to converge within budget, or the integrand produced NaN.
struct QuadratureError : std::runtime_error {
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

// Mismatched algebra dimensions or vector lengths.
struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Arguments outside an operation's stated domain.
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Identity case whose validity predicate is false.
struct InvalidCaseError : std::invalid_argument {
    explicit InvalidCaseError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace rankone
