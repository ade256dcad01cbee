#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crncex {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model-file syntax or semantic error, positioned at a 1-based line/column.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A precondition of an operation was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a configured size or iteration cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The external solver crashed, reported an error or answered something unexpected.
class SolverError : public Error {
 public:
  SolverError(const std::string& message, std::string solver_stderr = {})
      : Error(message), stderr_(std::move(solver_stderr)) {}
  const std::string& solver_stderr() const { return stderr_; }

 private:
  std::string stderr_;
};

class SolverTimeout : public SolverError {
 public:
  using SolverError::SolverError;
};

/// The solver's model could not be decoded into a trace.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// A satisfying assignment did not correspond to a CRN execution. Always a bug.
class EncodingError : public Error {
 public:
  using Error::Error;
};

}  // namespace crncex
