#include "selffib/fib.hpp"

#include <bit>
#include <string>

#include "selffib/errors.hpp"

namespace selffib {

namespace {

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  if (s < a || s >= m) s -= m;
  return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

} // namespace

FibPair fib_pair_mod(u64 n, u64 m) {
  if (m == 0) throw domain_error("fib_pair_mod: modulus must be positive");
  u64 a = 0 % m; // F_0
  u64 b = 1 % m; // F_1
  if (n == 0) return {n, a, b, m};
  const int bits = std::bit_width(n);
  for (int i = bits - 1; i >= 0; --i) {
    // (a, b) = (F_k, F_{k+1})  ->  (F_2k, F_2k+1)
    u64 twice_b = addmod(b, b, m);
    u64 c = mulmod(a, submod(twice_b, a, m), m); // F_2k = F_k (2 F_{k+1} - F_k)
    u64 d = addmod(mulmod(a, a, m), mulmod(b, b, m), m); // F_2k+1 = F_k^2 + F_{k+1}^2
    if ((n >> i) & 1) {
      a = d;
      b = addmod(c, d, m);
    } else {
      a = c;
      b = d;
    }
  }
  return {n, a, b, m};
}

mpz_class fib_mod_big(u64 n, const mpz_class& m) {
  if (m <= 0) throw domain_error("fib_mod_big: modulus must be positive");
  mpz_class a = 0, b = 1 % m;
  if (n == 0) return a;
  const int bits = std::bit_width(n);
  mpz_class c, d, t;
  for (int i = bits - 1; i >= 0; --i) {
    t = 2 * b - a;
    if (t < 0) t += m;
    c = a * t % m;
    d = (a * a + b * b) % m;
    if ((n >> i) & 1) {
      a = d;
      b = (c + d) % m;
    } else {
      a = c;
      b = d;
    }
  }
  return a;
}

mpz_class fib_exact(u64 n, u64 limit) {
  if (n > limit)
    throw limit_error("fib_exact: index " + std::to_string(n) + " exceeds limit " +
                      std::to_string(limit));
  if (n == 0) return 0;
  mpz_class a = 0, b = 1; // (F_k, F_{k+1})
  const int bits = std::bit_width(n);
  mpz_class c, d;
  for (int i = bits - 1; i >= 0; --i) {
    c = a * (2 * b - a);
    d = a * a + b * b;
    if ((n >> i) & 1) {
      a = d;
      b = c + d;
    } else {
      a = c;
      b = d;
    }
  }
  return a;
}

unsigned v2_fib(u64 n) {
  if (n == 0) throw domain_error("v2_fib: n must be positive");
  switch (n % 12) {
    case 1: case 2: case 4: case 5: case 7: case 8: case 10: case 11:
      return 0; // n = 1, 2 (mod 3)
    case 3: case 9:
      return 1; // n = 3 (mod 6)
    case 6:
      return 3; // n = 6 (mod 12)
    default: { // n = 0 (mod 12)
      return static_cast<unsigned>(std::countr_zero(n)) + 2;
    }
  }
}

unsigned v5_fib(u64 n) {
  if (n == 0) throw domain_error("v5_fib: n must be positive");
  unsigned v = 0;
  while (n % 5 == 0) {
    n /= 5;
    ++v;
  }
  return v;
}

unsigned vp_fib(u64 p, u64 n, u64 zp, unsigned ep) {
  if (p == 2 || p == 5)
    throw domain_error("vp_fib: use v2_fib / v5_fib for p = 2, 5");
  if (n == 0 || zp == 0 || ep == 0)
    throw domain_error("vp_fib: n, z(p), e(p) must be positive");
  if (n % zp != 0) return 0;
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v + ep;
}

bool divides_fib(u64 n) {
  if (n == 0) throw domain_error("divides_fib: n must be positive");
  return fib_pair_mod(n, n).f_n == 0;
}

} // namespace selffib
