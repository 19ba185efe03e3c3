#pragma once

#include <stdexcept>
#include <string>

namespace pstneps {

// Bad user input: malformed documents, invalid graph specifications.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested object exceeds the configured vertex cap.
class size_cap_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal invariant violated: non-unitary transition, diverging series,
// disagreeing evaluation paths. Never caused by user input alone.
class computation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pstneps
