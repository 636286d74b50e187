#pragma once

#include <stdexcept>
#include <string>

namespace dpdlogit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Estimation failures.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

class Separation : public Error {
 public:
  using Error::Error;
};

class SingularDesign : public Error {
 public:
  using Error::Error;
};

class SingularInformation : public Error {
 public:
  using Error::Error;
};

// Testing and power.
class SingularConstraintCovariance : public Error {
 public:
  using Error::Error;
};

class DegenerateAlternative : public Error {
 public:
  using Error::Error;
};

class SeriesNotConverged : public Error {
 public:
  using Error::Error;
};

class NullViolated : public Error {
 public:
  using Error::Error;
};

// Data handling.
class UnknownDataset : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SimulationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace dpdlogit
