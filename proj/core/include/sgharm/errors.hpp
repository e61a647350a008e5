#pragma once

#include <stdexcept>

namespace sgharm {

/// Rejected input: bad weights, unsupported sizes, malformed specs.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical identity that must hold failed numerically.
/// Reaching this indicates a bug, not bad input.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sgharm
