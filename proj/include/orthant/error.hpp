#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orthant {

enum class ErrorKind {
  invalid_argument,
  parse,
  model,
  precondition,
  numeric,
  not_found,
  io,
};

/// Base exception for every failure raised by the toolkit.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Expression syntax or name-resolution failure; `offset` is a byte offset
/// into the source text.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : Error(ErrorKind::parse, message + " at offset " + std::to_string(offset)),
        offset_(offset),
        detail_(message) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t offset_;
  std::string detail_;
};

}  // namespace orthant
