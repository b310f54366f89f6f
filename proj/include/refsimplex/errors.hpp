#pragma once

#include <stdexcept>
#include <string>

namespace refsimplex {

/// Shape mismatch between operands (non-square matrix, wrong vector length).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A weight vector that is not positive, not reduced, or fails admissibility.
class InvalidWeightError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A mathematical invariant that must hold did not; indicates a bug or bad input data.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace refsimplex
