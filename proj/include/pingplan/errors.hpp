#pragma once

#include <stdexcept>

namespace pingplan {

// Root of the library's error hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Scenario parameter set violates a structural invariant (positivity, S < R, r < R, U != V).
class ScenarioError : public Error {
public:
    using Error::Error;
};

// Operation invoked on a scenario whose regime does not support it.
class RegimeError : public Error {
public:
    using Error::Error;
};

// Operation requires a slower target (U < V) but the scenario has V <= U.
class FastTargetError : public RegimeError {
public:
    using RegimeError::RegimeError;
};

// Numeric argument lies outside the operation's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// A quantity the computation divides by (or interpolates across) vanished.
class DegenerateError : public Error {
public:
    using Error::Error;
};

// An iterative kernel exhausted its budget without meeting tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Root refinement was asked to bisect an interval with no sign change.
class NoSignChangeError : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

// Simulation step size exceeds the resolution bound for the scenario.
class StepSizeError : public Error {
public:
    using Error::Error;
};

} // namespace pingplan
