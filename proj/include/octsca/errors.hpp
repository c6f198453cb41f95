#pragma once

#include <stdexcept>
#include <string>

namespace octsca {

// Invalid geometry, probabilities or option combinations. CLI exit code 1.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A structural invariant does not hold (curl violation, unbalanced field,
// phase mismatch, corrupted state). CLI exit code 2.
class InvariantError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Unreadable, unwritable or malformed files. CLI exit code 3.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace octsca
