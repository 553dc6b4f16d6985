#pragma once

#include <stdexcept>
#include <string>

namespace cayleyfp {

// Thrown when an operation refuses to run because an enforced cap would be
// exceeded (enumeration limits, solver size limits, non-prime modulus in the
// experiment driver). Distinct from std::invalid_argument, which signals a
// malformed parameter. Both map to exit code 1 in the CLI.
class refusal_error : public std::runtime_error {
 public:
  explicit refusal_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed invocation (bad config key, unusable flag combination). Maps to
// exit code 2 in the CLI, like a command-line parse failure.
class usage_error : public std::runtime_error {
 public:
  explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cayleyfp
