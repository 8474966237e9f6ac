#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdk {

// Every error raised by the library derives from Error so callers can map
// failures to exit codes without catching std::exception wholesale.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation outside a function's domain (w <= 0, a pole, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed call arguments: wrong point type, too few grid points.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A combinator or model was assembled from incompatible parts.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A numeric parameter is out of range (r < lambda, negative constant).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

/// Non-finite matrix entries or a solver that failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or ill-typed JSON configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A certification trial failed; carries the trial index.
class TrialError : public Error {
 public:
  TrialError(std::size_t trial, const std::string& what)
      : Error("trial " + std::to_string(trial) + ": " + what), trial_(trial) {}
  std::size_t trial() const { return trial_; }

 private:
  std::size_t trial_;
};

}  // namespace pdk
