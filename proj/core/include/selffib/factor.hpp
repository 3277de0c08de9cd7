#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "selffib/ints.hpp"

namespace selffib {

// Canonical factorization: primes strictly increasing, exponents >= 1,
// product of prime^exponent equals value. value = 1 has no parts.
struct Factorization {
  u64 value = 1;
  std::vector<std::pair<u64, unsigned>> parts;
};

inline constexpr std::size_t kDefaultDivisorCap = 1u << 20;

// Deterministic for the full 64-bit range (fixed Miller-Rabin witness set).
bool is_prime(u64 n);

// Trial division for small factors, Brent's rho above that. The rho walk is
// seeded from n, so the result is a pure function of the input.
Factorization factorize(u64 n);

// All divisors in increasing order. Throws limit_error when the divisor
// count exceeds cap.
std::vector<u64> divisors_sorted(const Factorization& f,
                                 std::size_t cap = kDefaultDivisorCap);

// lcm of a nonempty list; throws overflow_error instead of wrapping.
u64 lcm_all(std::span<const u64> values);

// P(n), the largest prime factor. Requires n >= 2.
u64 largest_prime_factor(u64 n);

// v_p(n) for n >= 1.
unsigned valuation(u64 n, u64 p);

// Smallest-prime-factor table for [2, limit], built once and then shared
// read-only. Also exposes the primes up to limit in increasing order.
class SpfSieve {
public:
  explicit SpfSieve(u32 limit);

  u32 limit() const { return limit_; }
  u32 spf(u32 n) const { return spf_[n]; }
  const std::vector<u32>& primes() const { return primes_; }

  Factorization factorize(u32 n) const;

private:
  u32 limit_;
  std::vector<u32> spf_;
  std::vector<u32> primes_;
};

} // namespace selffib
