#pragma once

#include <stdexcept>
#include <string>

namespace pitheory {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidPermutation : public Error {
 public:
  using Error::Error;
};

class OrderBoundExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The group is not π-separable (or not p-solvable) for the requested π.
class NotSeparable : public Error {
 public:
  using Error::Error;
};

/// A self-check on computed data failed. Signals a bug or a corrupt input table.
class CheckFailed : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace pitheory
