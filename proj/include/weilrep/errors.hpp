#pragma once

#include <stdexcept>
#include <string>

namespace weilrep {

// Enumeration or size bound exceeded (CLI exit code 3).
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotASquareError : std::domain_error {
  using std::domain_error::domain_error;
};

// A structural check that should never fail did fail.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input is valid but outside what an operation can handle symbolically.
struct UnsupportedInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace weilrep
