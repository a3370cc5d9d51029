#pragma once

#include <stdexcept>
#include <string>

namespace endoquant {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coefficient was requested beyond the degree up to which a jet is known.
class AccuracyUnderflow : public Error {
 public:
  using Error::Error;
};

/// A ν-order was requested outside the validity window of a series.
class WindowUnderflow : public Error {
 public:
  using Error::Error;
};

/// Operands live on different variable sets or have incompatible shapes.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// A value that must be invertible is not.
class SingularValue : public Error {
 public:
  using Error::Error;
};

/// Input data violates a documented precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace endoquant
