#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmv {

/// Bad caller input: unknown voter ids, overlapping blocs, malformed options.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A structurally valid object that violates a domain invariant.
class ValidationError : public InputError {
public:
  using InputError::InputError;
};

/// Text that does not follow the file grammar. Line and column are 1-based;
/// column is the comma-separated field index (0 when the whole line is at fault).
class ParseError : public InputError {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& reason)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + reason),
        line_(line), column_(column), reason_(reason) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& reason() const noexcept { return reason_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string reason_;
};

/// The computation would exceed a configured resource limit.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The brute-force oracle was asked for more players than its guard allows.
class RefusalError : public ResourceError {
public:
  using ResourceError::ResourceError;
};

/// No voter is critical anywhere, so the index cannot be normalised.
class NormalizationError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

}  // namespace qmv
