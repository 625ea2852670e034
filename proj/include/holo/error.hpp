#pragma once

#include <stdexcept>
#include <string>

namespace holo {

/// Base class of all engine errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input; carries a 1-based line/column.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A mathematically invalid request (division by zero, algebra mismatch, ...).
class MathError : public Error {
 public:
  using Error::Error;
};

/// A function is not ∂-finite with respect to the requested algebra.
class NotDFiniteError : public MathError {
 public:
  using MathError::MathError;
};

/// An iteration or degree cap was hit before the computation finished.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace holo
