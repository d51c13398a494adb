#pragma once

#include <stdexcept>
#include <string>

namespace reeb {

/// Bad input: a constructor or operation precondition was violated.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested operation is only defined over the integers.
class UnsupportedRingError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Boundary matrices with mismatched shapes or a nonzero composite.
class ChainComplexError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A realization theorem's hypotheses do not hold for the requested target.
/// Distinct from ValidationError: the input is well formed, the theorem just
/// does not cover it.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace reeb
