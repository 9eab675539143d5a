#pragma once

#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"

namespace liftlab {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Largest power of p dividing n.
inline std::int64_t p_part(std::int64_t n, std::int64_t p) {
  std::int64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

inline std::int64_t p_prime_part(std::int64_t n, std::int64_t p) { return n / p_part(n, p); }

inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (auto p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

inline void require_prime(std::int64_t p) {
  if (!is_prime(p)) throw input_error("not a prime: " + std::to_string(p));
}

/// A set of primes, possibly given as the complement of a finite set.
/// `PrimeSet::only(p)` is {p}; `PrimeSet::except(p)` is p'.
class PrimeSet {
public:
  static PrimeSet only(std::int64_t p) { return PrimeSet({p}, false); }
  static PrimeSet except(std::int64_t p) { return PrimeSet({p}, true); }
  static PrimeSet of(std::set<std::int64_t> primes) { return PrimeSet(std::move(primes), false); }

  bool contains(std::int64_t q) const { return (listed_.count(q) != 0) != complement_; }

  bool is_pi_number(std::int64_t n) const {
    for (auto q : prime_divisors(n))
      if (!contains(q)) return false;
    return true;
  }

  PrimeSet complement() const { return PrimeSet(listed_, !complement_); }

  std::string to_string() const {
    std::string s = complement_ ? "not{" : "{";
    bool first = true;
    for (auto q : listed_) {
      if (!first) s += ",";
      s += std::to_string(q);
      first = false;
    }
    return s + "}";
  }

private:
  PrimeSet(std::set<std::int64_t> listed, bool complement)
      : listed_(std::move(listed)), complement_(complement) {}
  std::set<std::int64_t> listed_;
  bool complement_;
};

} // namespace liftlab
