#include "distress/errors.hpp"

#include <sstream>

namespace distress {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return "config error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Schema: return "schema error";
    case ErrorKind::DuplicateKey: return "duplicate-key error";
    case ErrorKind::EmptyWindow: return "empty-window error";
    case ErrorKind::InsufficientGroup: return "insufficient-group error";
    case ErrorKind::VariableCount: return "variable-count violation";
    case ErrorKind::ZeroVariance: return "zero-variance error";
    case ErrorKind::SingularMatrix: return "singular-matrix error";
    case ErrorKind::DegenerateSeparation: return "degenerate-separation error";
    case ErrorKind::Binding: return "binding error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::InsufficientCases: return "insufficient-cases error";
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::MissingData: return "missing-data error";
    case ErrorKind::MissingLabel: return "missing-label error";
    case ErrorKind::Load: return "load error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

ParseError::ParseError(std::size_t row, std::string column, const std::string& detail)
    : Error(ErrorKind::Parse,
            "row " + std::to_string(row) + ", column \"" + column + "\": " + detail),
      row_(row),
      column_(std::move(column)) {}

namespace {
std::string pivot_message(std::size_t pivot, double value) {
  std::ostringstream os;
  os << "non-positive pivot " << value << " at index " << pivot;
  return os.str();
}
}  // namespace

SingularMatrixError::SingularMatrixError(std::size_t pivot, double value)
    : Error(ErrorKind::SingularMatrix, pivot_message(pivot, value)), pivot_(pivot) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace distress
