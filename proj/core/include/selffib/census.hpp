#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <vector>

#include "selffib/classify.hpp"
#include "selffib/entry_point.hpp"
#include "selffib/factor.hpp"
#include "selffib/ints.hpp"

namespace selffib {

// z(n) for every n <= limit, backed by a smallest-prime-factor sieve plus a
// per-prime entry-point table. Built once (in parallel), then shared
// read-only by any number of workers.
class ZTable {
public:
  explicit ZTable(u64 limit, unsigned jobs = 0, ZeCache* cache = nullptr);

  u64 limit() const { return limit_; }
  const SpfSieve& sieve() const { return sieve_; }

  u64 z(u64 n) const;
  std::optional<u64> member_k(u64 n) const; // n/z(n) when z(n) | n
  u64 z_at_prime(u64 p) const;
  unsigned wall_e(u64 p) const; // e(p); only held for p^2 <= limit

private:
  u64 local_z(u32 p, unsigned a) const;

  u64 limit_;
  SpfSieve sieve_; // sized limit+1 so p - (p/5) stays in range for p = limit
  std::vector<u32> zp_; // z(p), aligned with sieve_.primes()
  std::unordered_map<u64, unsigned> ep_; // e(p) for p^2 <= limit
};

enum class CensusMethod { kDirect, kEntryPoint, kClassification };

struct CensusOptions {
  unsigned jobs = 0;             // 0 = all hardware threads
  ZeCache* cache = nullptr;
  const ZTable* table = nullptr; // optional prebuilt table, limit >= x
  bool keep_members = true;
  bool keep_per_class = true;
};

struct CensusReport {
  u64 x = 0;
  CensusMethod method = CensusMethod::kDirect;
  u64 count = 0;                // A(x)
  std::vector<u64> members;     // sorted, when kept
  std::map<u64, u64> per_class; // k -> count, entry-point and classification runs
  std::vector<u64> patched;     // classification only: brute members the rules miss
  std::chrono::duration<double> elapsed{};
};

// A(x) and the members, by one of three routes that must agree:
//   Direct          n | F_n per candidate, via modular Fibonacci pairs.
//   EntryPoint      z(n) | n per candidate, via the sieve-backed ZTable.
//   Classification  union of rule-enumerated classes with c(k) <= x, plus a
//                   logged patch for members the rules are known to miss.
CensusReport enumerate_selfdivisors(u64 x, CensusMethod method,
                                    const CensusOptions& opts = {});

// A(x) by the entry-point route, spot-checked against the direct test on a
// deterministic random subsample.
u64 count_selfdivisors(u64 x, const CensusOptions& opts = {});

// The bound formulas evaluated at x, o(1) terms dropped, natural logs.
// Diagnostics only; nothing asymptotic is asserted.
struct BoundReport {
  u64 x = 0;
  u64 a_of_x = 0;
  double log_a = 0;      // log A(x)
  double lower_aux = 0;  // (1/4) log x
  double upper_main = 0; // log x - (1/2) log x logloglog x / loglog x
  double heuristic = 0;  // log x -       log x logloglog x / loglog x
};

BoundReport bound_report(u64 x, const CensusOptions& opts = {});
BoundReport bound_report_from_count(u64 x, u64 a_of_x); // formulas only

// One failed inequality from the c(n) growth scan.
struct CGrowthViolation {
  u64 n;
  double log_c;
  double bound_largest_prime; // 3 P(n)
  double bound_log_sq;        // 7 sum over p | n of (log p)^2
};

// Checks log c(n) < 3 P(n) and log c(n) < 7 sum (log p)^2 for every
// squarefree n <= x with 5 not dividing n. c(n) is accumulated in exact
// bignum arithmetic; returns every violator (expected: none).
std::vector<CGrowthViolation> c_growth_scan(u64 x,
                                            const CensusOptions& opts = {});

// Recursion tree: each node carries a prime power q^d; its children are the
// prime-power factors of z(q). A node whose base prime already appeared on
// the path is kept but not expanded (the 2 <-> 3 cycle would otherwise make
// the tree infinite), likewise nodes at max_depth.
struct PrattFibNode {
  u64 p = 0;
  unsigned exponent = 1;
  u64 prime_power = 0;
  enum class Stop { kNone, kRepeatedPrime, kMaxDepth } stop = Stop::kNone;
  std::vector<PrattFibNode> children;
};

struct PrattFibTree {
  u64 root_prime = 0;
  unsigned max_depth = 0;
  PrattFibNode root;
};

PrattFibTree pratt_fib_tree(u64 p, unsigned max_depth = 8,
                            ZeCache* cache = nullptr);

} // namespace selffib
