#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace geocross {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates general position (collinear overlap, vertex touching an
/// edge interior, point on a line it must avoid).
class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A coordinate or intermediate value exceeds the exact-arithmetic budget.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid input that breaks a model invariant. `indices` names the
/// offending points or edges when there are any.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<std::size_t> indices = {})
      : Error(what), indices_(std::move(indices)) {}

  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  std::vector<std::size_t> indices_;
};

/// Bad argument to an operation (k = 0, leaf size 1, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Work limit exceeded by an operation with a hard size cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A randomized construction ran out of attempts.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant; indicates a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace geocross
