#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hopsets {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. Line numbers are 1-based; 0 means "not line specific".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Parameters outside the range the construction is defined for.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Exact weight arithmetic would leave the 128-bit budget.
class OverflowError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hopsets
