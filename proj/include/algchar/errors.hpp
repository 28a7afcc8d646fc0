#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace algchar {

/// Precondition violated by the caller (mismatched ambient spaces, inverse of zero, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input document or constants failed validation at load time.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A desk-scale guard was exceeded. Never silently truncated.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::uint64_t partial_lower_bound = 0)
      : std::runtime_error(what), partial_(partial_lower_bound) {}

  /// Number of items already produced when the guard tripped (0 when not applicable).
  std::uint64_t partial_lower_bound() const noexcept { return partial_; }

 private:
  std::uint64_t partial_;
};

/// A certified invariant failed; signals a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace algchar
