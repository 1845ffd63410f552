#pragma once

#include <stdexcept>
#include <string>

namespace faber {

/// Base class of everything thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The sampled function returned a non-finite value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace faber
