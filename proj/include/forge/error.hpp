#pragma once

#include <stdexcept>
#include <string>

namespace forge {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input is not even well formed (bad indices, skipped levels, wrong shapes).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An object failed validation (invalid cocycle, inconsistent diagram, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A computation needed data beyond the declared horizon of a diagram.
class HorizonError : public Error {
 public:
  using Error::Error;
};

// Exact integer arithmetic left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Internal consistency check failed; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace forge
