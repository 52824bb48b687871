#pragma once

#include <stdexcept>
#include <string>

namespace chromac {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's accepted domain (negative channel, bad concentration, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Mathematical domain violation such as a division by zero.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Tensor shapes that do not satisfy an operator's contract.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Failure while evaluating an IR graph.
class EvalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A broken internal invariant; never the user's fault.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error("internal error: " + what) {}
};

}  // namespace chromac
