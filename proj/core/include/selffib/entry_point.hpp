#pragma once

#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "selffib/ints.hpp"

namespace selffib {

// z(n) with the per-prime-power pieces it was assembled from.
struct EntryPointRecord {
  u64 n = 1;
  u64 z = 1;
  std::vector<std::pair<u64, u64>> assembly; // (prime power, its entry point)
};

// e(p) = v_p(F_{z(p)}). Equals 1 for every prime anyone has checked, but the
// code never assumes that.
struct WallExponent {
  u64 p;
  unsigned e;
};

// Trajectory of k under repeated application of z, ending at a fixed point.
// The fixed point is recorded twice at the tail: iterates[i+1] = z(iterates[i])
// holds for the whole list, so the last step witnesses z(f) = f.
struct ZChain {
  u64 start;
  std::vector<u64> iterates;
  u64 fixed_point;
};

// Read-mostly map p -> (z(p), e(p)) with optional CSV persistence.
// File format: header "p,z,e", one row per prime, ascending p. flush()
// rewrites the file atomically (temp file + rename) when entries were added.
class ZeCache {
public:
  ZeCache() = default;
  explicit ZeCache(std::filesystem::path file);
  ~ZeCache();

  ZeCache(const ZeCache&) = delete;
  ZeCache& operator=(const ZeCache&) = delete;

  std::optional<std::pair<u64, unsigned>> find(u64 p) const;
  void put(u64 p, u64 z, unsigned e);
  void flush();

  std::size_t size() const;
  const std::filesystem::path& file() const { return file_; }

private:
  mutable std::shared_mutex mu_;
  std::unordered_map<u64, std::pair<u64, unsigned>> map_;
  std::filesystem::path file_;
  bool dirty_ = false;
};

// z(p) for prime p: the smallest divisor d of p - (p/5) with p | F_d
// (z(2) = 3 and z(5) = 5 directly). Composite input is a domain error.
u64 z_prime(u64 p, ZeCache* cache = nullptr);

// e(p) = v_p(F_{z(p)}), found by testing F_{z(p)} against growing powers of p.
WallExponent wall_exponent(u64 p, ZeCache* cache = nullptr);

// z(p^a). p = 2 follows the explicit table 3, 6, 3*2^(a-2); p = 5 gives 5^a;
// odd p otherwise p^max(a-e(p),0) * z(p).
u64 z_prime_power(u64 p, unsigned a, ZeCache* cache = nullptr);

// z(n) assembled as the lcm of z over the prime powers of n.
EntryPointRecord z_of(u64 n, ZeCache* cache = nullptr);

// Repeated z until a fixed point; throws no_convergence_error after
// max_steps (it never triggers in practice).
ZChain iterate_z(u64 k, unsigned max_steps = 200, ZeCache* cache = nullptr);

// Legendre symbol (p/5): +1 for p = 1, 4 (mod 5), -1 for p = 2, 3 (mod 5),
// 0 for p = 5 itself.
int legendre5(u64 p);

} // namespace selffib
