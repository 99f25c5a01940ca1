#pragma once

#include <stdexcept>
#include <string>

namespace bgg {

/// Malformed input: unknown Lie type, non-dominant weight, bad CLI arguments.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured resource bound (Weyl group size, module dimension, complex
/// size) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(std::string bound_name, std::string message)
      : std::runtime_error(std::move(message)), bound_(std::move(bound_name)) {}

  const std::string& bound() const noexcept { return bound_; }

 private:
  std::string bound_;
};

/// A computed object violates an identity that the theory guarantees
/// (d^2 != 0, Jacobi failure, non-unique singular vector, ...). Always a bug
/// or a corrupted input table.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Precondition of an algorithm does not hold (e.g. a complex handed to the
/// splitting routine is not exact).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace bgg
