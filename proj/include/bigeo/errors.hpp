#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bigeo {

// Argument outside the domain of an operation (non-positive raw value,
// division by the geometric zero, log of a non-positive number, ...).
class domain_error : public std::domain_error {
 public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// A probe window or node set mixes signs where a consistent sign is required.
class sign_error : public domain_error {
 public:
  explicit sign_error(const std::string& what) : domain_error(what) {}
};

// Result left the representable range (log value overflowed, factorial too
// large, binomial order beyond the exact-integer limit).
class range_error : public std::range_error {
 public:
  explicit range_error(const std::string& what) : std::range_error(what) {}
};

// Expression syntax error. `column` is 1-based; for unexpected end of input
// it points one past the last character.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t column, const std::string& what)
      : std::runtime_error("column " + std::to_string(column) + ": " + what),
        column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

// Target value not bracketed by the endpoints, or no witness locatable
// inside the bracket.
class bracket_error : public std::runtime_error {
 public:
  explicit bracket_error(const std::string& what) : std::runtime_error(what) {}
};

// Probe sequences fail to agree on a limit.
class no_limit_error : public std::runtime_error {
 public:
  explicit no_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Derivative/difference order outside what the chosen path supports.
class order_error : public std::runtime_error {
 public:
  explicit order_error(const std::string& what) : std::runtime_error(what) {}
};

// File output failure (CSV writer).
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bigeo
