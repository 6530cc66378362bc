#pragma once

#include <stdexcept>
#include <string>

namespace fairorient {

// Malformed or inconsistent input (bad JSON, schema violations, precondition
// failures the caller can fix).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A solver invariant that should be unreachable was breached. Always a bug.
struct InternalError : std::runtime_error {
  explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input is well-formed but exceeds an enumeration cap.
struct LimitError : std::runtime_error {
  explicit LimitError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fairorient
