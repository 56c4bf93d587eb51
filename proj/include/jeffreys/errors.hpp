#pragma once

#include <stdexcept>
#include <string>

namespace jeffreys {

/// Input that violates a type invariant (bad dimensions, weights, simplex membership).
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A solver failed to reach its stopping rule or an internal bracket check failed.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jeffreys
