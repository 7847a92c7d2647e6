#pragma once

#include <stdexcept>

namespace k4 {

// Malformed input text or arguments. CLI exit code 1.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input is well formed but violates a mathematical precondition. Exit code 2.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed. Exit code 3.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace k4
