#include "selffib/factor.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "selffib/errors.hpp"

namespace selffib {

namespace {

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Sufficient for all n < 2^64.
constexpr u64 kMillerRabinBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

inline u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Brent's cycle-finding rho with batched gcd. n must be odd, composite,
// and free of factors below the trial-division bound.
u64 pollard_brent(u64 n) {
  for (u64 attempt = 1;; ++attempt) {
    u64 y = splitmix64(n ^ attempt * 0xda942042e4dd58b5ULL) % n;
    u64 c = splitmix64(attempt ^ n) % n;
    if (c == 0) c = 1;
    u64 m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto step = [&](u64 v) { return (static_cast<u64>(u128(v) * v % n) + c) % n; };
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k = 0; k < r && g == 1; k += m) {
        ys = y;
        u64 lim = std::min(m, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = step(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (g == n) {
      // Batch overshot; replay one step at a time.
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

constexpr u64 kTrialBound = 1000;

void factor_rec(u64 n, std::vector<u64>& primes_out) {
  while (n > 1) {
    if (is_prime(n)) {
      primes_out.push_back(n);
      return;
    }
    u64 d = pollard_brent(n);
    factor_rec(d, primes_out);
    n /= d;
  }
}

} // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kMillerRabinBases)
    if (!miller_rabin_witness(n, a, d, s)) return false;
  return true;
}

Factorization factorize(u64 n) {
  if (n == 0) throw domain_error("factorize: n must be positive");
  Factorization f;
  f.value = n;
  if (n == 1) return f;
  for (u64 p = 2; p <= kTrialBound && p * p <= n; p += (p == 2) ? 1 : 2) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.parts.emplace_back(p, e);
  }
  if (n > 1) {
    if (n <= kTrialBound * kTrialBound) {
      f.parts.emplace_back(n, 1);
    } else {
      std::vector<u64> rest;
      factor_rec(n, rest);
      std::sort(rest.begin(), rest.end());
      for (std::size_t i = 0; i < rest.size();) {
        std::size_t j = i;
        while (j < rest.size() && rest[j] == rest[i]) ++j;
        f.parts.emplace_back(rest[i], static_cast<unsigned>(j - i));
        i = j;
      }
    }
  }
  return f;
}

std::vector<u64> divisors_sorted(const Factorization& f, std::size_t cap) {
  std::size_t count = 1;
  for (const auto& [p, e] : f.parts) {
    count *= e + 1;
    if (count > cap)
      throw limit_error("divisors_sorted: divisor count exceeds cap " +
                        std::to_string(cap));
  }
  std::vector<u64> divs{1};
  divs.reserve(count);
  for (const auto& [p, e] : f.parts) {
    std::size_t have = divs.size();
    u64 pk = 1;
    for (unsigned j = 1; j <= e; ++j) {
      pk *= p;
      for (std::size_t i = 0; i < have; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

u64 lcm_all(std::span<const u64> values) {
  if (values.empty()) throw domain_error("lcm_all: empty list");
  u64 acc = 1;
  for (u64 v : values) {
    if (v == 0) throw domain_error("lcm_all: values must be positive");
    u64 g = std::gcd(acc, v);
    u64 q = acc / g;
    if (q > UINT64_MAX / v)
      throw overflow_error("lcm_all: result exceeds 64 bits");
    acc = q * v;
  }
  return acc;
}

u64 largest_prime_factor(u64 n) {
  if (n < 2) throw domain_error("largest_prime_factor: n must be >= 2");
  return factorize(n).parts.back().first;
}

unsigned valuation(u64 n, u64 p) {
  if (n == 0 || p < 2) throw domain_error("valuation: need n >= 1, p >= 2");
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

SpfSieve::SpfSieve(u32 limit) : limit_(limit), spf_(static_cast<size_t>(limit) + 1, 0) {
  // Linear sieve: every composite is crossed once, by its smallest prime.
  for (u32 i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      primes_.push_back(i);
    }
    for (u32 p : primes_) {
      if (p > spf_[i] || u64(p) * i > limit) break;
      spf_[u64(p) * i] = p;
    }
  }
}

Factorization SpfSieve::factorize(u32 n) const {
  if (n == 0 || n > limit_)
    throw domain_error("SpfSieve::factorize: n out of sieve range");
  Factorization f;
  f.value = n;
  while (n > 1) {
    u32 p = spf_[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.parts.emplace_back(p, e);
  }
  return f;
}

} // namespace selffib
