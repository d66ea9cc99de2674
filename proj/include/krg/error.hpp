#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace krg {

/// Group family or rank outside the supported catalog.
class UnsupportedGroup : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A self-twisted-dual representation with no override, rule, or oracle.
class Unclassifiable : public std::runtime_error {
 public:
  Unclassifiable(const std::string& what, std::string weight)
      : std::runtime_error(what), weight_(std::move(weight)) {}
  const std::string& weight() const noexcept { return weight_; }

 private:
  std::string weight_;
};

/// Caller broke an operation precondition (non-dominant weight, bad index...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal invariant failed; always a bug or a corrupted relation table.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in add");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in mul");
  return r;
}

}  // namespace krg
