#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace d2t {

// Base class for every error this library raises on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad data or configuration: malformed input files, id mismatches,
// out-of-range parameters. The CLI maps this to exit code 1.
struct ValidationError : Error {
  using Error::Error;
};

// Filesystem trouble: unreadable or unwritable paths. CLI exit code 2.
struct IoError : Error {
  using Error::Error;
};

// Validation failure tied to a position in the offending text.
struct ParseError : ValidationError {
  ParseError(const std::string& message, std::size_t byte_offset)
      : ValidationError(message + " at byte offset " + std::to_string(byte_offset)),
        offset(byte_offset) {}

  std::size_t offset;
};

}  // namespace d2t
