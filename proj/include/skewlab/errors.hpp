#pragma once

#include <stdexcept>
#include <string>

namespace skewlab {

/// Base class for all skewlab errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition (zero divisor, mismatched
/// automorphisms, index out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Field construction failed (reducible modulus, bad parameters).
class FieldConstructionError : public Error {
 public:
  using Error::Error;
};

/// The trailing k columns of a generator matrix are singular; the caller is
/// expected to resample.
class SystematicFormUnavailable : public Error {
 public:
  using Error::Error;
};

/// A dual-construction hypothesis (P-independence of the derived locators,
/// sum-rank weight of the derived multipliers) does not hold for this input.
class DualHypothesisFailed : public Error {
 public:
  using Error::Error;
};

/// Ciphertext could not be decrypted to a valid message.
class DecryptionError : public Error {
 public:
  using Error::Error;
};

/// An enumeration budget would be exceeded; the operation refuses to run.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace skewlab
