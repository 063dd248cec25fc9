#pragma once

#include <stdexcept>
#include <string>

namespace infmax {

// Base class for all library errors. The CLI maps each subclass to an exit code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad model files, unknown vertices, overlapping sets.
class ValidationError : public Error {
public:
  using Error::Error;
};

// Parameter outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

// Exact enumeration would exceed the configured number of free vertices.
class CapacityError : public Error {
public:
  using Error::Error;
};

// An iterative procedure hit its iteration cap.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

} // namespace infmax
