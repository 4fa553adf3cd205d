#pragma once

#include <stdexcept>
#include <string>

namespace hadamard {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong lengths, bad permutations, unparsable values.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A precondition on the mathematical state failed, e.g. the point is not
/// Hadamard or a basis does not span the kernel.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// A computation could not be completed within its configured limits.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace hadamard
