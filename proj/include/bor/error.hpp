#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bor {

enum class ErrorCode {
  domain,         // parameter outside the mathematical domain
  parse,          // malformed input record
  io,             // file could not be opened or written
  no_queries,     // nothing left to evaluate
  invalid_input,  // inconsistent inputs (duplicate ids, missing labels, ...)
  internal,       // an asserted identity did not hold
};

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::domain, what) {}
};

/// Malformed input. `line()` is 1-based, 0 when the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(ErrorCode::parse, line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorCode::invalid_input, what) {}
};

}  // namespace bor
