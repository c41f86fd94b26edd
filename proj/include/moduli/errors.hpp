#pragma once

#include <stdexcept>
#include <string>

namespace moduli {

/// Bad user-supplied parameters (CLI maps these to exit status 2).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation could not be completed as requested (CLI exit status 1).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// q-series tail bound exceeds the requested tolerance.
class InsufficientTruncation : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// Accumulated error swamps the value (e.g. dividing by an interval containing 0).
class PrecisionLoss : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// A bounded search ran past its hard cap.
class SearchExhausted : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// Two points expected to be inequivalent give numerically coincident values.
class NearCoincidence : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// More than one algebraic integer fits a numerical value.
class AmbiguousRecognition : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

}  // namespace moduli
