#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cpool {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes, orders or sizes that do not fit an operation's contract.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An element count or index that does not fit in std::size_t, or an oracle
// asked to materialize more cells than its cap allows.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Arguments that are well-shaped but semantically invalid (p < 1, empty
// estimate list, time-domain MCT over unequal dims, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Malformed plan text. Carries the 1-based line and column of the problem.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// File-level failures. Each malformed-file condition has its own type so
// callers can tell them apart.
class IoError : public Error {
 public:
  using Error::Error;
};
class BadMagicError : public IoError {
 public:
  using IoError::IoError;
};
class VersionMismatchError : public IoError {
 public:
  using IoError::IoError;
};
class TruncatedError : public IoError {
 public:
  using IoError::IoError;
};
class DimsOverflowError : public IoError {
 public:
  using IoError::IoError;
};
class FormatError : public IoError {
 public:
  using IoError::IoError;
};

}  // namespace cpool
