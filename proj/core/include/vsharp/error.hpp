#pragma once

#include <stdexcept>
#include <string>

namespace vsharp {

// Malformed or inconsistent input: files, labels, subgroup specs, weights.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical invariant failed on data that parsed correctly.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vsharp
