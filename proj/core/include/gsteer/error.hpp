#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gsteer {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix is not 2N x 2N, or two operands disagree on their mode count.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Mode index out of range, overlapping parties, unknown label, ...
class PartitionError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefiniteError : public Error {
 public:
  using Error::Error;
};

class IllConditionedError : public Error {
 public:
  using Error::Error;
};

/// Eigenvalues of i*Omega*sigma that do not come in clean +/- real pairs.
class NumericalDegeneracyError : public Error {
 public:
  using Error::Error;
};

/// Input violates a state-level requirement (unphysical CM, all Monte Carlo
/// draws rejected).
class StateError : public Error {
 public:
  using Error::Error;
};

/// Comb model that cannot be simulated.
class ModelError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Well-formed document with the wrong fields, types or values.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace gsteer
