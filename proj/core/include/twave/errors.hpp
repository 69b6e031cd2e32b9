#pragma once

#include <stdexcept>
#include <string>

namespace twave {

/// A parameter lies outside the range where the discretization is defined
/// (e.g. a Riesz order alpha <= 1, or a tempering rate lambda < 0).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller broke a precondition that is not a parameter range: mismatched
/// vector lengths, too few coefficients, step index past the horizon.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A mathematically guaranteed property failed at runtime, e.g. the step
/// matrix turned out not to be positive definite.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Requested feature is deliberately not supported (nonzero initial data).
class UnsupportedFeature : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace twave
