#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elmkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial, equation or deduction text.
class ParseError : public Error {
public:
  ParseError(std::string message, std::size_t line, std::size_t column,
             std::string source = {})
      : Error(format(message, line, column, source)), message_(std::move(message)),
        source_(std::move(source)), line_(line), column_(column) {}

  /// The message without position information.
  const std::string &message() const noexcept { return message_; }
  const std::string &source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  static std::string format(const std::string &message, std::size_t line,
                            std::size_t column, const std::string &source) {
    std::string where = source.empty() ? "" : source + ":";
    if (line > 0)
      where += "line " + std::to_string(line) + ", ";
    return where + "column " + std::to_string(column) + ": " + message;
  }

  std::string message_;
  std::string source_;
  std::size_t line_;
  std::size_t column_;
};

/// An exact integer computation left the 64-bit range.
class OverflowError : public Error {
public:
  using Error::Error;
};

/// Arguments violate an operation's precondition.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A system of equations was found to have no solution.
class Contradiction : public Error {
public:
  using Error::Error;
};

/// Enumeration or dense-solver size limit exceeded.
class CapExceeded : public Error {
public:
  using Error::Error;
};

} // namespace elmkit
