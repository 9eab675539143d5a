#pragma once

#include <stdexcept>
#include <string>

namespace liftlab {

/// Malformed input: bad permutations, mismatched groups, parse failures.
class input_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class precondition_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The configured order bound was exceeded.
class capacity_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Theorem verifiers only accept odd primes.
class unsupported_prime : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Carries a witness in the message.
class internal_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace liftlab
