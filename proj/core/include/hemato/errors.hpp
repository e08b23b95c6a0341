#pragma once

#include <stdexcept>
#include <string>

namespace hemato {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state vector contained NaN or infinity.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the requested operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not reach its tolerance.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree did not (coefficient transcription, root criteria).
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// Integration produced non-finite values.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double last_valid_time)
      : Error(what), last_valid_time_(last_valid_time) {}
  double last_valid_time() const noexcept { return last_valid_time_; }

 private:
  double last_valid_time_;
};

/// A trajectory left the nonnegative orthant beyond the solver tolerance.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed or incomplete configuration file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hemato
