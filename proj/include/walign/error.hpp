#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace walign {

/// Raised for malformed input files. Carries a 1-based line (or record) locus
/// when one is known; zero means "no specific line".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised when well-formed inputs violate a cross-input contract
/// (pair-count mismatch, out-of-range link, bad configuration).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace walign
