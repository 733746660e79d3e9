#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tickvar {

/// Malformed or unusable input data (bad CSV rows, too few ticks, bad flags).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CSV row that failed to parse. `line()` is 1-based.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A parameter or data set outside the domain of a model formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by partitioning when an elementary segment holds no tick.
class EmptySegmentError : public DomainError {
 public:
  EmptySegmentError(std::size_t segment, const std::string& what)
      : DomainError(what), segment_(segment) {}

  std::size_t segment() const noexcept { return segment_; }

 private:
  std::size_t segment_;
};

}  // namespace tickvar
