#pragma once

#include <stdexcept>
#include <string>

namespace lozenge {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid geometric or parameter input (partition not fitting, bad wall, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Inconsistent configuration (empty contour annulus, bad config file, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure failed to reach its tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// A state space or enumeration exceeded its guard.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace lozenge
