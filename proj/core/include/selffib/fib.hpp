#pragma once

#include <gmpxx.h>

#include "selffib/ints.hpp"

namespace selffib {

// (F_n mod m, F_{n+1} mod m) together with the inputs that produced them.
struct FibPair {
  u64 index;
  u64 f_n;
  u64 f_n1;
  u64 modulus;
};

inline constexpr u64 kDefaultFibExactLimit = 1'000'000;

// Fast doubling. O(log n) multiplications; any modulus up to 2^64-1 is safe
// (intermediate products go through 128 bits).
FibPair fib_pair_mod(u64 n, u64 m);

// Same, for moduli that do not fit in a word. Returns F_n mod m.
mpz_class fib_mod_big(u64 n, const mpz_class& m);

// Exact F_n. The index cap keeps memory bounded: F_n has about 0.209*n digits.
mpz_class fib_exact(u64 n, u64 limit = kDefaultFibExactLimit);

// v_2(F_n) by the closed four-case form.
unsigned v2_fib(u64 n);

// v_5(F_n) = v_5(n).
unsigned v5_fib(u64 n);

// v_p(F_n) for odd p != 5, given z(p) and e(p) = v_p(F_{z(p)}):
// v_p(n) + e(p) when z(p) | n, else 0.
unsigned vp_fib(u64 p, u64 n, u64 zp, unsigned ep);

// n | F_n, via F_n mod n.
bool divides_fib(u64 n);

} // namespace selffib
