#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symctr {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  DimensionMismatch(std::size_t a, std::size_t b)
      : Error("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

/// Raised by the expression parser; line and column are 1-based.
class ParseError : public Error {
public:
  ParseError(const std::string &what, std::size_t line, std::size_t column, std::string token)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what +
              (token.empty() ? std::string{} : " (near '" + token + "')")),
        line_(line), column_(column), token_(std::move(token)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string &token() const { return token_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string token_;
};

} // namespace symctr
