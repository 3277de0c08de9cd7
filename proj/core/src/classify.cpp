#include "selffib/classify.hpp"

#include <algorithm>
#include <string>

#include "selffib/census.hpp"
#include "selffib/errors.hpp"
#include "selffib/factor.hpp"

namespace selffib {

namespace {

// Effective 2-adic Wall exponent. From the valuation formula's "v_2(n) + 2"
// case; makes the prime 2 follow the same threshold algebra as odd primes
// (cutoff 8 = 2^(2+1), rule present exactly when v_2(k) = 2).
constexpr unsigned kEffectiveE2 = 2;

void set_diff(const std::vector<u64>& a, const std::vector<u64>& b,
              std::vector<u64>& out) {
  out.clear();
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
}

} // namespace

DivisorClass class_verdict(u64 k, ZeCache* cache) {
  if (k == 0) throw domain_error("class_verdict: k must be positive");
  DivisorClass dc;
  dc.k = k;
  dc.empty = false;
  if (k % 8 == 0) {
    dc.empty = true;
    dc.reason = EmptyReason::kDivisibleBy8;
    return dc;
  }
  if (k % 5 == 0) {
    dc.empty = true;
    dc.reason = EmptyReason::kDivisibleBy5;
    return dc;
  }
  Factorization f = factorize(k);
  std::vector<PrimeRule> odd_rules;
  for (const auto& [p, a] : f.parts) {
    if (p == 2) continue;
    unsigned e = wall_exponent(p, cache).e;
    if (a >= e + 1) {
      dc.empty = true;
      dc.reason = EmptyReason::kPrimePowerExcess;
      dc.witness = p;
      return dc;
    }
    // a <= e here. At the boundary the multiplier exponent may be 0 or at
    // least e - a; below it the prime is pinned.
    if (a == e)
      odd_rules.push_back({p, RuleKind::kThresholdOrZero, e - a});
    else
      odd_rules.push_back({p, RuleKind::kFixed0, 0});
  }
  if (k % 4 == 0) dc.rules.push_back({2, RuleKind::kFree, 0});
  bool five_placed = false;
  for (const auto& r : odd_rules) {
    if (!five_placed && r.p > 5) {
      dc.rules.push_back({5, RuleKind::kFree, 0});
      five_placed = true;
    }
    dc.rules.push_back(r);
  }
  if (!five_placed) dc.rules.push_back({5, RuleKind::kFree, 0});
  return dc;
}

u64 c_of_k(u64 k, ZeCache* cache) {
  DivisorClass dc = class_verdict(k, cache);
  if (dc.empty)
    throw empty_class_error("c_of_k: class " + std::to_string(k) +
                            " has no members");
  ZChain chain = iterate_z(k, 200, cache);
  u64 lcm = lcm_all(chain.iterates);
  if (k > UINT64_MAX / lcm) throw overflow_error("c_of_k: c(k) exceeds 64 bits");
  return k * lcm;
}

std::vector<u64> enumerate_class(u64 k, u64 x, ZeCache* cache) {
  if (x == 0) throw domain_error("enumerate_class: x must be positive");
  DivisorClass dc = class_verdict(k, cache);
  if (dc.empty) return {};
  u64 c = c_of_k(k, cache);
  if (c > x) return {};

  // Largest prime first; every branch prunes on the partial product.
  std::vector<PrimeRule> rules = dc.rules;
  std::sort(rules.begin(), rules.end(),
            [](const PrimeRule& a, const PrimeRule& b) { return a.p > b.p; });

  std::vector<u64> out;
  auto dfs = [&](auto&& self, std::size_t idx, u64 value) -> void {
    if (idx == rules.size()) {
      out.push_back(value);
      return;
    }
    const PrimeRule& rule = rules[idx];
    switch (rule.kind) {
      case RuleKind::kFixed0:
        self(self, idx + 1, value);
        break;
      case RuleKind::kFree:
        for (u64 v = value;; v *= rule.p) {
          self(self, idx + 1, v);
          if (v > x / rule.p) break;
        }
        break;
      case RuleKind::kThresholdOrZero: {
        if (rule.threshold == 0) {
          for (u64 v = value;; v *= rule.p) {
            self(self, idx + 1, v);
            if (v > x / rule.p) break;
          }
          break;
        }
        self(self, idx + 1, value); // exponent 0
        u64 v = value;
        bool fits = true;
        for (unsigned j = 0; j < rule.threshold; ++j) {
          if (v > x / rule.p) {
            fits = false;
            break;
          }
          v *= rule.p;
        }
        while (fits) {
          self(self, idx + 1, v);
          if (v > x / rule.p) break;
          v *= rule.p;
        }
        break;
      }
    }
  };
  dfs(dfs, 0, c);

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<u64> member_class(u64 n, ZeCache* cache) {
  if (n == 0) throw domain_error("member_class: n must be positive");
  u64 z = z_of(n, cache).z;
  if (n % z) return std::nullopt;
  return n / z;
}

ReconciliationReport reconcile(u64 k, u64 x, unsigned jobs, ZeCache* cache) {
  if (k == 0 || x == 0) throw domain_error("reconcile: k, x must be positive");
  ReconciliationReport rep;
  rep.k = k;
  rep.x = x;
  rep.enumerated = enumerate_class(k, x, cache);

  std::optional<ZTable> local;
  CensusOptions opts;
  opts.jobs = jobs;
  opts.cache = cache;
  if (!opts.table || opts.table->limit() < x) {
    local.emplace(x, jobs, cache);
    opts.table = &*local;
  }
  CensusReport census = enumerate_selfdivisors(x, CensusMethod::kEntryPoint, opts);
  for (u64 n : census.members) {
    if (opts.table->member_k(n) == k) rep.brute.push_back(n);
  }

  set_diff(rep.brute, rep.enumerated, rep.missing);
  set_diff(rep.enumerated, rep.brute, rep.extra);
  return rep;
}

} // namespace selffib
