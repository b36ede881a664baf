#pragma once

#include <stdexcept>
#include <string>

namespace rkr {

/// Factorization failures, non-finite iterates, residual checks that did not
/// close. Carries whatever diagnostics the solver could collect.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// File-system level problems (missing file, unwritable path).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// CSV ingestion failure with 1-based row/column of the offending cell
/// (0 when the failure is not tied to a cell, e.g. an empty file).
class CsvParseError : public std::runtime_error {
 public:
  CsvParseError(const std::string& what, long row = 0, long column = 0)
      : std::runtime_error(what), row_(row), column_(column) {}
  long row() const { return row_; }
  long column() const { return column_; }

 private:
  long row_;
  long column_;
};

}  // namespace rkr
