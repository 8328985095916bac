#pragma once

#include <stdexcept>
#include <string>

namespace zipcal {

// Invalid arguments, flags, or configuration. CLI exit code 1.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable/malformed input data or a failed integrity check. CLI exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace zipcal
