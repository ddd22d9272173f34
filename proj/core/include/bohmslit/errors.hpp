#pragma once

#include <stdexcept>
#include <string>

namespace bohmslit {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration errors (CLI exit code 2).

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// An invariant on a named configuration field does not hold.
class ValidationError : public ConfigError {
 public:
  ValidationError(std::string field, const std::string& what)
      : ConfigError(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Numerical failures (CLI exit code 3).

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The wavefunction vanishes (relative to its local scale) where a
/// log-gradient was requested.
class NodeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StepLimitExceeded : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IncompleteTrajectory : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SamplerError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Rejection acceptance fell below the floor, or a proposal budget ran out.
class EnvelopeTooTight : public SamplerError {
 public:
  using SamplerError::SamplerError;
};

/// A proposal had density ratio above the envelope bound.
class EnvelopeViolated : public SamplerError {
 public:
  using SamplerError::SamplerError;
};

// I/O (CLI exit code 4).

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bohmslit
