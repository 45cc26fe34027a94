#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homcount {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SignatureMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A configured size or count cap was hit. `reached` carries the count at the
// moment the cap fired, when meaningful.
class LimitExceeded : public Error {
 public:
  LimitExceeded(const std::string& what, std::size_t reached = 0)
      : Error(what), reached_(reached) {}
  std::size_t reached() const noexcept { return reached_; }

 private:
  std::size_t reached_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// A checked theorem failed at runtime; always an implementation bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace homcount
