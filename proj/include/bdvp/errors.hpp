#pragma once

#include <stdexcept>
#include <string>

namespace bdvp {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Matrix/vector shapes do not conform (e.g. n_T != n_U * n_R).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A user or element index is out of range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// A channel draw is rank deficient where full rank is required.
class DegenerateChannelError : public Error {
 public:
  using Error::Error;
};

/// A matrix to be inverted or factorized is numerically singular.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An input vector is degenerate (e.g. zero transmit power).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured search-space guard.
class SearchSpaceError : public Error {
 public:
  using Error::Error;
};

/// A configuration file is malformed; the message is anchored as path:line.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace bdvp
