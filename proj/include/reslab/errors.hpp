#pragma once

#include <stdexcept>
#include <string>

namespace reslab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// argument outside the declared domain of a function or operation
struct DomainError : Error {
    using Error::Error;
};

// point in a gap of the branch table, inside a translate of the funnel interval
struct OrdinaryPointError : DomainError {
    using DomainError::DomainError;
};

// point on an endpoint of a branch interval
struct BoundaryError : DomainError {
    using DomainError::DomainError;
};

struct PoleError : Error {
    using Error::Error;
};

// evaluation point lies on a branch cut
struct CutError : Error {
    using Error::Error;
};

// point coincides with an allowed singularity of a piecewise section
struct ExceptionalPointError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    using Error::Error;
};

struct ResourceError : Error {
    using Error::Error;
};

}  // namespace reslab
