#pragma once

#include <stdexcept>
#include <string>

namespace dappell {

/// Argument sits on a pole of gamma (nonpositive integer) or makes a lower
/// series parameter invalid.
class PoleError : public std::domain_error {
public:
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

/// Argument outside the convergence/validity region of an evaluator.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Operator atom applied to a function family it does not act on.
class OperatorMismatchError : public std::invalid_argument {
public:
    explicit OperatorMismatchError(const std::string& what)
        : std::invalid_argument(what) {}
};

/// Quadrature refinement stalled above the requested tolerance, or an
/// integrand series left its convergence region on the integration domain.
class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dappell
