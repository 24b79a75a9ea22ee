#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace distress {

enum class ErrorKind {
  Config,
  Parse,
  Schema,
  DuplicateKey,
  EmptyWindow,
  InsufficientGroup,
  VariableCount,
  ZeroVariance,
  SingularMatrix,
  DegenerateSeparation,
  Binding,
  Domain,
  InsufficientCases,
  Validation,
  MissingData,
  MissingLabel,
  Load,
};

std::string_view to_string(ErrorKind kind);

/// Base for every error raised by the toolkit. The kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

/// Malformed cell in a CSV document. `row` is the 1-based data row (header excluded).
class ParseError : public Error {
 public:
  ParseError(std::size_t row, std::string column, const std::string& detail);
  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

/// Non-positive pivot met during a Cholesky factorization.
class SingularMatrixError : public Error {
 public:
  SingularMatrixError(std::size_t pivot, double value);
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace distress
