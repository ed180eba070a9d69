#pragma once

#include <stdexcept>
#include <string>

namespace hts {

// Argument outside an operation's domain (bad label, negative exponent, zero polynomial, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed input data: a hypergraph that violates uniformity, a corrupt document.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input the operation deliberately does not handle (e.g. k = 2 in the eigenvalue-set route).
class Unsupported : public DomainError {
public:
    using DomainError::DomainError;
};

class DivisibilityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Iterative solver ran out of iterations. what() carries the best residual seen.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The resultant oracle refuses instances whose characteristic degree exceeds the budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(long long degree, long long budget)
        : std::runtime_error("characteristic degree " + std::to_string(degree) +
                             " exceeds oracle budget " + std::to_string(budget)),
          degree_(degree) {}

    long long degree() const noexcept { return degree_; }

private:
    long long degree_;
};

class OracleFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hts
