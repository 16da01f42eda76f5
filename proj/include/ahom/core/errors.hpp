#pragma once

#include <stdexcept>
#include <string>

namespace ahom {

/// Input outside the supported class (field, modulus, order); CLI exit code 2.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search or enumeration budget was exhausted before an answer was certified.
class BoundExceededError : public UnsupportedError {
 public:
  using UnsupportedError::UnsupportedError;
};

/// A checked mathematical identity failed; carries a human-readable witness.
/// CLI exit code 1.
class VerificationError : public std::runtime_error {
 public:
  VerificationError(const std::string& what, std::string witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

}  // namespace ahom
