#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

// Exhaustive enumeration would exceed a configured limit. CLI exit code 3.
struct guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (bad JSON, non-group table, non-Sylow P, ...).
// CLI exit code 2.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structural contract that the theory guarantees did not hold at runtime
// (re-expression failure, non-exact division, saturation defect, ...).
// CLI exit code 1.
struct defect_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hecke
