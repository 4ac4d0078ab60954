#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cmstoch {

// Base class for every error raised by the library. The CLI maps the
// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `position` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at byte " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Well-formed input that violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An operation that needs single-controller structure was handed a game
// without it.
class ControllerMismatch : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration would exceed the configured size guard.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// Vanishing-discount limits could not be certified.
class Inconclusive : public Error {
 public:
  using Error::Error;
};

// A condition that valid inputs cannot produce (singular system for a
// stochastic matrix, failed fixed-point certificate, ...).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace cmstoch
