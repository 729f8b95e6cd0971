#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace factorlab {

/// Base for every error raised by the library. The CLI maps subclasses to
/// distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad tables, signature mismatches, unbound variables,
/// partitions that are not congruences.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : ValidationError(message + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A configured size bound or closure budget was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace factorlab
