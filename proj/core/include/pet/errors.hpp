#ifndef PET_ERRORS_HPP
#define PET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pet {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Mismatched group parameters or incompatible operand shapes.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the valid domain (negative index, eps <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured budget or cap would be exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Non-square matrix or dimension mismatch.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual or JSON input.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition does not hold for the given input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace pet

#endif  // PET_ERRORS_HPP
