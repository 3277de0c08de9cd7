#pragma once

#include <optional>
#include <vector>

#include "selffib/entry_point.hpp"
#include "selffib/ints.hpp"

namespace selffib {

// Why a class k has no members.
enum class EmptyReason { kDivisibleBy8, kDivisibleBy5, kPrimePowerExcess };

// Per-prime exponent rule for building class members from c(k).
enum class RuleKind { kFixed0, kFree, kThresholdOrZero };

struct PrimeRule {
  u64 p;
  RuleKind kind;
  unsigned threshold = 0; // only meaningful for kThresholdOrZero
};

// Verdict for the class { n : n / z(n) = k }, with the multiplier rules
// that generate it from its least element.
struct DivisorClass {
  u64 k;
  bool empty;
  EmptyReason reason = EmptyReason::kDivisibleBy8; // when empty
  u64 witness = 0;          // the offending odd prime, for kPrimePowerExcess
  std::vector<PrimeRule> rules; // when nonempty: 5 always, odd p | k, 2 iff 4 | k
};

// Rule-based enumeration checked against brute force. extra nonempty means
// the enumeration produced a non-member (soundness bug); missing nonempty
// means brute force found members the rules do not generate.
struct ReconciliationReport {
  u64 k;
  u64 x;
  std::vector<u64> enumerated;
  std::vector<u64> brute;
  std::vector<u64> missing;
  std::vector<u64> extra;
};

// Emptiness test and rules. Empty if 8 | k, 5 | k, or v_p(k) >= e(p)+1 for an
// odd prime p | k. The 2-adic side uses effective exponent 2, so the 8 | k
// cutoff is the p = 2 instance of the same rule.
DivisorClass class_verdict(u64 k, ZeCache* cache = nullptr);

// Least element of a nonempty class: k * lcm of the z-iterates of k.
u64 c_of_k(u64 k, ZeCache* cache = nullptr);

// All members <= x generated from c(k) by the class rules, sorted.
std::vector<u64> enumerate_class(u64 k, u64 x, ZeCache* cache = nullptr);

// k = n / z(n) when z(n) | n, otherwise nothing.
std::optional<u64> member_class(u64 n, ZeCache* cache = nullptr);

// Brute-force members of class k up to x (shared scan machinery lives in
// census.hpp; this is the single-class entry point).
ReconciliationReport reconcile(u64 k, u64 x, unsigned jobs = 0,
                               ZeCache* cache = nullptr);

} // namespace selffib
