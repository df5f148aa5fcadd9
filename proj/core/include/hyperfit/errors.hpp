#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperfit {

/// Input-file validation failure. Carries the 1-based row and the column
/// name so callers can point at the offending cell.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t row, std::string column)
      : std::runtime_error("row " + std::to_string(row) + ", column '" + column +
                           "': " + what),
        row_(row),
        column_(std::move(column)) {}

  std::size_t row() const { return row_; }
  const std::string& column() const { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

/// Raised when a fit has no usable deformation signal (all-zero loads) or
/// the solver drives c1 onto its lower bound.
class DegenerateFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hyperfit
