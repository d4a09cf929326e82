#pragma once

#include <stdexcept>
#include <string>

namespace wpt {

// Root of all library errors. Callers that only care about "something went
// wrong" catch this; the CLI maps the two subclasses to distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented invariant (bad geometry, malformed config,
// unparseable Touchstone data).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Inputs were well formed but the numerics cannot proceed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularConfigurationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularMatrixError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoSignChangeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateCouplingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateNetworkError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace wpt
