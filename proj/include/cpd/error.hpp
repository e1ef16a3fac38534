#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cpd {

/// Precondition violated by a caller-supplied argument.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by quantities that are undefined for a signal without change points
/// (minimal jump, signal-to-noise ratio).
class NoChangePoint : public std::domain_error {
 public:
  NoChangePoint() : std::domain_error("signal has no change points") {}
};

/// Malformed numeric input; carries the 1-based line of the offending record.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cpd
