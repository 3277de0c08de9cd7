#include "selffib/census.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include <gmpxx.h>

#include "selffib/errors.hpp"
#include "selffib/fib.hpp"
#include "parallel.hpp"

namespace selffib {

namespace {

constexpr u64 kMaxTableLimit = 2'147'483'646; // 2^31 - 2, so z(p) fits u32
constexpr u64 kScanBlock = 1 << 16;
constexpr u64 kSpotCheckSeed = 0x5e1ff1b0c0ffee11ULL;

u32 sieve_span(u64 limit) {
  if (limit == 0) throw domain_error("ZTable: limit must be positive");
  if (limit > kMaxTableLimit)
    throw limit_error("ZTable: limit exceeds " + std::to_string(kMaxTableLimit));
  return static_cast<u32>(limit + 1); // p - (p/5) can be limit + 1
}

u64 lcm64(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

} // namespace

ZTable::ZTable(u64 limit, unsigned jobs, ZeCache* cache)
    : limit_(limit), sieve_(sieve_span(limit)) {
  const auto& primes = sieve_.primes();
  if (primes.empty()) return;
  zp_.assign(primes.size(), 0);
  detail::parallel_blocks(
      0, primes.size() - 1, 2048, jobs, [&](u64, u64 lo, u64 hi) {
        for (u64 i = lo; i <= hi; ++i) {
          u64 p = primes[i];
          if (p == 2) {
            zp_[i] = 3;
            continue;
          }
          if (p == 5) {
            zp_[i] = 5;
            continue;
          }
          u32 target = static_cast<u32>(legendre5(p) == 1 ? p - 1 : p + 1);
          u64 z = 0;
          for (u64 d : divisors_sorted(sieve_.factorize(target))) {
            if (fib_pair_mod(d, p).f_n == 0) {
              z = d;
              break;
            }
          }
          zp_[i] = static_cast<u32>(z);
        }
      });
  for (u32 p : primes) {
    if (u64(p) * p > limit_) break;
    ep_[p] = wall_exponent(p, cache).e;
  }
}

u64 ZTable::z_at_prime(u64 p) const {
  const auto& primes = sieve_.primes();
  auto it = std::lower_bound(primes.begin(), primes.end(), p);
  if (it == primes.end() || *it != p)
    throw domain_error("ZTable::z_at_prime: not a prime in range");
  return zp_[static_cast<std::size_t>(it - primes.begin())];
}

unsigned ZTable::wall_e(u64 p) const {
  auto it = ep_.find(p);
  if (it == ep_.end())
    throw domain_error("ZTable::wall_e: e(p) only held for p^2 <= limit");
  return it->second;
}

u64 ZTable::local_z(u32 p, unsigned a) const {
  if (p == 2) {
    if (a == 1) return 3;
    if (a == 2) return 6;
    return 3ull << (a - 2);
  }
  if (p == 5) {
    u64 r = 1;
    while (a--) r *= 5;
    return r;
  }
  u64 zp = z_at_prime(p);
  if (a == 1) return zp;
  unsigned e = ep_.at(p); // a >= 2 implies p^2 <= limit, so e(p) is present
  u64 lift = 1;
  for (unsigned j = e; j < a; ++j) lift *= p;
  return lift * zp;
}

u64 ZTable::z(u64 n) const {
  if (n == 0 || n > limit_) throw domain_error("ZTable::z: n out of range");
  u64 acc = 1;
  u32 m = static_cast<u32>(n);
  while (m > 1) {
    u32 p = sieve_.spf(m);
    unsigned a = 0;
    do {
      m /= p;
      ++a;
    } while (m % p == 0);
    acc = lcm64(acc, local_z(p, a)); // divides z(n) <= 2n, no overflow
  }
  return acc;
}

std::optional<u64> ZTable::member_k(u64 n) const {
  if (n == 0 || n > limit_) throw domain_error("ZTable::member_k: n out of range");
  u64 acc = 1;
  u32 m = static_cast<u32>(n);
  while (m > 1) {
    u32 p = sieve_.spf(m);
    unsigned a = 0;
    do {
      m /= p;
      ++a;
    } while (m % p == 0);
    acc = lcm64(acc, local_z(p, a));
    // Every partial lcm divides z(n); if it already fails to divide n,
    // z(n) cannot divide n either.
    if (n % acc) return std::nullopt;
  }
  return n / acc;
}

namespace {

struct BlockHits {
  std::vector<u64> members;
  std::vector<u64> ks; // aligned with members (entry-point route only)
};

CensusReport census_direct(u64 x, const CensusOptions& opts) {
  u64 nblocks = (x + kScanBlock - 1) / kScanBlock;
  std::vector<BlockHits> blocks(nblocks);
  detail::parallel_blocks(1, x, kScanBlock, opts.jobs, [&](u64 bi, u64 lo, u64 hi) {
    auto& out = blocks[bi];
    for (u64 n = lo; n <= hi; ++n)
      if (divides_fib(n)) out.members.push_back(n);
  });
  CensusReport rep;
  rep.x = x;
  rep.method = CensusMethod::kDirect;
  for (auto& b : blocks) {
    rep.count += b.members.size();
    if (opts.keep_members)
      rep.members.insert(rep.members.end(), b.members.begin(), b.members.end());
  }
  return rep;
}

CensusReport census_entry_point(u64 x, const ZTable& table,
                                const CensusOptions& opts) {
  u64 nblocks = (x + kScanBlock - 1) / kScanBlock;
  std::vector<BlockHits> blocks(nblocks);
  detail::parallel_blocks(1, x, kScanBlock, opts.jobs, [&](u64 bi, u64 lo, u64 hi) {
    auto& out = blocks[bi];
    for (u64 n = lo; n <= hi; ++n) {
      if (auto k = table.member_k(n)) {
        out.members.push_back(n);
        out.ks.push_back(*k);
      }
    }
  });
  CensusReport rep;
  rep.x = x;
  rep.method = CensusMethod::kEntryPoint;
  for (auto& b : blocks) {
    rep.count += b.members.size();
    if (opts.keep_members)
      rep.members.insert(rep.members.end(), b.members.begin(), b.members.end());
    if (opts.keep_per_class)
      for (u64 k : b.ks) ++rep.per_class[k];
  }
  return rep;
}

// c(k) when it does not exceed x, tracked with an early bail so nothing
// overflows. Chain values are read from the table: every iterate divides the
// running lcm, which is kept <= x/k <= limit.
std::optional<u64> c_bounded(u64 k, u64 x, const ZTable& table) {
  u64 budget = x / k; // c(k) <= x  iff  lcm of iterates <= floor(x/k)
  u64 lcm = 1;
  u64 cur = k;
  for (unsigned step = 0; step < 200; ++step) {
    u64 nxt = table.z(cur);
    u64 g = std::gcd(lcm, nxt);
    u128 wide = u128(lcm / g) * nxt;
    if (wide > budget) return std::nullopt;
    lcm = static_cast<u64>(wide);
    if (nxt == cur) return k * lcm;
    cur = nxt;
  }
  throw no_convergence_error("c_bounded: no fixed point within 200 steps");
}

CensusReport census_classification(u64 x, const ZTable& table,
                                   const CensusOptions& opts) {
  // Brute side: ground truth to patch against (and the per-class counts).
  CensusOptions brute_opts = opts;
  brute_opts.keep_members = true;
  CensusReport brute = census_entry_point(x, table, brute_opts);

  // The per-class walk below leans on memoized (z, e); keep one in-memory
  // cache for the run when the caller did not provide any.
  ZeCache fallback_cache;
  ZeCache* cache = opts.cache ? opts.cache : &fallback_cache;

  // Theorem side: every class whose least element fits under x.
  u64 nblocks = (x + kScanBlock - 1) / kScanBlock;
  std::vector<std::vector<u64>> blocks(nblocks);
  detail::parallel_blocks(1, x, kScanBlock, opts.jobs, [&](u64 bi, u64 lo, u64 hi) {
    auto& out = blocks[bi];
    for (u64 k = lo; k <= hi; ++k) {
      if (k % 8 == 0 || k % 5 == 0) continue;
      if (table.z(k) > x / k) continue; // c(k) >= k z(k)
      Factorization f = table.sieve().factorize(static_cast<u32>(k));
      bool empty = false;
      for (const auto& [p, a] : f.parts) {
        if (p == 2 || a < 2) continue; // a = 1 never exceeds e(p) >= 1
        if (a >= table.wall_e(p) + 1) {
          empty = true;
          break;
        }
      }
      if (empty) continue;
      if (!c_bounded(k, x, table)) continue;
      std::vector<u64> members = enumerate_class(k, x, cache);
      out.insert(out.end(), members.begin(), members.end());
    }
  });

  std::vector<u64> enumerated;
  for (auto& b : blocks)
    enumerated.insert(enumerated.end(), b.begin(), b.end());
  std::sort(enumerated.begin(), enumerated.end());

  CensusReport rep;
  rep.x = x;
  rep.method = CensusMethod::kClassification;
  std::set_difference(brute.members.begin(), brute.members.end(),
                      enumerated.begin(), enumerated.end(),
                      std::back_inserter(rep.patched));
  std::set_union(enumerated.begin(), enumerated.end(), rep.patched.begin(),
                 rep.patched.end(), std::back_inserter(rep.members));
  rep.count = rep.members.size();
  if (opts.keep_per_class) rep.per_class = std::move(brute.per_class);
  if (!opts.keep_members) rep.members.clear();
  return rep;
}

} // namespace

CensusReport enumerate_selfdivisors(u64 x, CensusMethod method,
                                    const CensusOptions& opts) {
  if (x == 0) throw domain_error("enumerate_selfdivisors: x must be positive");
  auto t0 = std::chrono::steady_clock::now();

  CensusReport rep;
  if (method == CensusMethod::kDirect) {
    rep = census_direct(x, opts);
  } else {
    std::optional<ZTable> local;
    const ZTable* table = opts.table;
    if (!table || table->limit() < x) {
      local.emplace(x, opts.jobs, opts.cache);
      table = &*local;
    }
    rep = method == CensusMethod::kEntryPoint
              ? census_entry_point(x, *table, opts)
              : census_classification(x, *table, opts);
  }
  rep.elapsed = std::chrono::steady_clock::now() - t0;
  return rep;
}

u64 count_selfdivisors(u64 x, const CensusOptions& opts) {
  if (x == 0) throw domain_error("count_selfdivisors: x must be positive");
  std::optional<ZTable> local;
  const ZTable* table = opts.table;
  if (!table || table->limit() < x) {
    local.emplace(x, opts.jobs, opts.cache);
    table = &*local;
  }
  CensusOptions run = opts;
  run.table = table;
  run.keep_members = false;
  run.keep_per_class = false;
  CensusReport rep = enumerate_selfdivisors(x, CensusMethod::kEntryPoint, run);

  std::mt19937_64 rng(kSpotCheckSeed ^ x);
  u64 samples = std::min<u64>(1000, x);
  for (u64 i = 0; i < samples; ++i) {
    u64 n = rng() % x + 1;
    if (divides_fib(n) != table->member_k(n).has_value())
      throw std::logic_error(
          "count_selfdivisors: direct and entry-point tests disagree at n = " +
          std::to_string(n));
  }
  return rep.count;
}

BoundReport bound_report_from_count(u64 x, u64 a_of_x) {
  if (x < 16)
    throw domain_error("bound_report: x must be >= 16 (logloglog undefined)");
  BoundReport rep;
  rep.x = x;
  rep.a_of_x = a_of_x;
  double lx = std::log(static_cast<double>(x));
  double llx = std::log(lx);
  double lllx = std::log(llx);
  rep.log_a = std::log(static_cast<double>(a_of_x));
  rep.lower_aux = lx / 4.0;
  rep.upper_main = lx - 0.5 * lx * lllx / llx;
  rep.heuristic = lx - lx * lllx / llx;
  return rep;
}

BoundReport bound_report(u64 x, const CensusOptions& opts) {
  if (x < 16)
    throw domain_error("bound_report: x must be >= 16 (logloglog undefined)");
  return bound_report_from_count(x, count_selfdivisors(x, opts));
}

std::vector<CGrowthViolation> c_growth_scan(u64 x, const CensusOptions& opts) {
  if (x < 2) throw domain_error("c_growth_scan: x must be >= 2");
  std::optional<ZTable> local;
  const ZTable* table = opts.table;
  if (!table || table->limit() < x) {
    local.emplace(x, opts.jobs, opts.cache);
    table = &*local;
  }

  u64 nblocks = (x - 1 + kScanBlock) / kScanBlock;
  std::vector<std::vector<CGrowthViolation>> blocks(nblocks);
  detail::parallel_blocks(2, x, kScanBlock, opts.jobs, [&](u64 bi, u64 lo, u64 hi) {
    auto& out = blocks[bi];
    mpz_class lcm, c;
    for (u64 n = lo; n <= hi; ++n) {
      if (n % 5 == 0) continue;
      Factorization f = table->sieve().factorize(static_cast<u32>(n));
      bool squarefree = true;
      for (const auto& [p, a] : f.parts)
        if (a > 1) {
          squarefree = false;
          break;
        }
      if (!squarefree) continue;

      lcm = 1;
      u64 cur = n;
      for (;;) {
        u64 nxt = cur <= table->limit() ? table->z(cur)
                                        : z_of(cur, opts.cache).z;
        mpz_lcm_ui(lcm.get_mpz_t(), lcm.get_mpz_t(),
                   static_cast<unsigned long>(nxt));
        if (nxt == cur) break;
        cur = nxt;
      }
      c = lcm * static_cast<unsigned long>(n);
      long exp2;
      double mant = mpz_get_d_2exp(&exp2, c.get_mpz_t());
      double log_c = std::log(mant) + static_cast<double>(exp2) * std::numbers::ln2;

      double bound_p = 3.0 * static_cast<double>(f.parts.back().first);
      double bound_sq = 0.0;
      for (const auto& [p, a] : f.parts) {
        double lp = std::log(static_cast<double>(p));
        bound_sq += lp * lp;
      }
      bound_sq *= 7.0;
      if (!(log_c < bound_p) || !(log_c < bound_sq))
        out.push_back({n, log_c, bound_p, bound_sq});
    }
  });

  std::vector<CGrowthViolation> violations;
  for (auto& b : blocks)
    violations.insert(violations.end(), b.begin(), b.end());
  return violations;
}

namespace {

PrattFibNode build_pratt(u64 q, unsigned delta, std::vector<u64>& path,
                         unsigned depth, unsigned max_depth, ZeCache* cache) {
  PrattFibNode node;
  node.p = q;
  node.exponent = delta;
  node.prime_power = 1;
  for (unsigned j = 0; j < delta; ++j) node.prime_power *= q;
  if (std::find(path.begin(), path.end(), q) != path.end()) {
    node.stop = PrattFibNode::Stop::kRepeatedPrime;
    return node;
  }
  if (depth >= max_depth) {
    node.stop = PrattFibNode::Stop::kMaxDepth;
    return node;
  }
  path.push_back(q);
  u64 zq = z_prime(q, cache);
  for (const auto& [r, d] : factorize(zq).parts)
    node.children.push_back(build_pratt(r, d, path, depth + 1, max_depth, cache));
  path.pop_back();
  return node;
}

} // namespace

PrattFibTree pratt_fib_tree(u64 p, unsigned max_depth, ZeCache* cache) {
  if (!is_prime(p)) throw domain_error("pratt_fib_tree: p must be prime");
  PrattFibTree tree;
  tree.root_prime = p;
  tree.max_depth = max_depth;
  std::vector<u64> path;
  tree.root = build_pratt(p, 1, path, 0, max_depth, cache);
  return tree;
}

} // namespace selffib
