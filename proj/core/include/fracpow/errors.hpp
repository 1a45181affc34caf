#pragma once

#include <stdexcept>
#include <string>

namespace fracpow {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration: bad enum combination, non-positive sizes,
/// unsupported method for the given operator, and the like.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation
/// (e.g. alpha outside (0,1), sigma below its admissible threshold).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver exhausted its iteration budget before reaching
/// the requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Filesystem / serialization failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracpow
