#pragma once

#include <stdexcept>
#include <string>

namespace shiftsum {

// Bad parameters or configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A sieve or transform size cap was exceeded (CLI exit code 3).
class CapExceeded : public std::length_error {
 public:
  explicit CapExceeded(const std::string& what) : std::length_error(what) {}
};

// A checked numerical invariant failed at runtime (CLI exit code 4).
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace shiftsum
