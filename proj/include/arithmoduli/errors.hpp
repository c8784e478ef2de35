#pragma once

#include <stdexcept>
#include <string>

namespace arithmoduli {

/// Numerical work could not reach a certified answer within the precision cap.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(const std::string& what, unsigned precision_reached)
      : std::runtime_error(what), precision_reached_(precision_reached) {}
  unsigned precision_reached() const noexcept { return precision_reached_; }

 private:
  unsigned precision_reached_;
};

/// A relation or bound could not be certified.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace arithmoduli
