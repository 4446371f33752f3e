#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("parse error at " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Numeric evaluation failed: unbound symbol, singular point, or domain error.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Symbolic operation outside its mathematical domain (e.g. division by zero).
class DomainError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class UnknownTensorError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ManifoldError : public Error {
 public:
  using Error::Error;
};

}  // namespace grg
