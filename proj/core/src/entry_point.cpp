#include "selffib/entry_point.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <string>
#include <system_error>

#include "selffib/errors.hpp"
#include "selffib/factor.hpp"
#include "selffib/fib.hpp"

namespace selffib {

namespace {

u64 compute_z_prime(u64 p) {
  if (p == 2) return 3;
  if (p == 5) return 5;
  u64 target = legendre5(p) == 1 ? p - 1 : p + 1;
  for (u64 d : divisors_sorted(factorize(target))) {
    if (fib_pair_mod(d, p).f_n == 0) return d;
  }
  throw std::logic_error("z_prime: no divisor of p -(p/5) works; p not prime?");
}

unsigned compute_wall_exponent(u64 p, u64 zp) {
  unsigned e = 1;
  u128 pk = u128(p) * p;
  while (true) {
    bool divisible;
    if (pk <= u128(UINT64_MAX)) {
      divisible = fib_pair_mod(zp, static_cast<u64>(pk)).f_n == 0;
    } else {
      // Power no longer fits a word; fall back to bignum arithmetic.
      mpz_class m;
      mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), e + 1);
      divisible = fib_mod_big(zp, m) == 0;
    }
    if (!divisible) return e;
    ++e;
    pk *= p;
  }
}

std::pair<u64, unsigned> z_and_e(u64 p, ZeCache* cache) {
  if (cache) {
    if (auto hit = cache->find(p)) return *hit;
  }
  u64 z = compute_z_prime(p);
  unsigned e = compute_wall_exponent(p, z);
  if (cache) cache->put(p, z, e);
  return {z, e};
}

u64 checked_pow(u64 base, unsigned exp) {
  u64 r = 1;
  while (exp--) {
    if (r > UINT64_MAX / base) throw overflow_error("prime power exceeds 64 bits");
    r *= base;
  }
  return r;
}

u64 lcm_checked(u64 a, u64 b) {
  u64 vals[] = {a, b};
  return lcm_all(vals);
}

} // namespace

int legendre5(u64 p) {
  switch (p % 5) {
    case 1:
    case 4:
      return 1;
    case 0:
      return 0;
    default:
      return -1;
  }
}

u64 z_prime(u64 p, ZeCache* cache) {
  if (!is_prime(p)) throw domain_error("z_prime: p must be prime");
  if (cache) return z_and_e(p, cache).first;
  return compute_z_prime(p);
}

WallExponent wall_exponent(u64 p, ZeCache* cache) {
  if (!is_prime(p)) throw domain_error("wall_exponent: p must be prime");
  return {p, z_and_e(p, cache).second};
}

u64 z_prime_power(u64 p, unsigned a, ZeCache* cache) {
  if (a == 0) throw domain_error("z_prime_power: exponent must be positive");
  if (!is_prime(p)) throw domain_error("z_prime_power: p must be prime");
  if (p == 2) {
    if (a == 1) return 3;
    if (a == 2) return 6;
    if (a - 2 >= 63) throw overflow_error("z(2^a) exceeds 64 bits");
    return 3ull << (a - 2);
  }
  if (p == 5) return checked_pow(5, a);
  auto [z, e] = z_and_e(p, cache);
  u64 lift = a > e ? checked_pow(p, a - e) : 1;
  if (lift > UINT64_MAX / z) throw overflow_error("z(p^a) exceeds 64 bits");
  return lift * z;
}

EntryPointRecord z_of(u64 n, ZeCache* cache) {
  if (n == 0) throw domain_error("z_of: n must be positive");
  EntryPointRecord rec;
  rec.n = n;
  if (n == 1) return rec;
  for (const auto& [p, a] : factorize(n).parts) {
    u64 pp = checked_pow(p, a);
    u64 local = z_prime_power(p, a, cache);
    rec.assembly.emplace_back(pp, local);
    rec.z = lcm_checked(rec.z, local);
  }
  return rec;
}

ZChain iterate_z(u64 k, unsigned max_steps, ZeCache* cache) {
  if (k == 0) throw domain_error("iterate_z: k must be positive");
  ZChain chain;
  chain.start = k;
  u64 cur = k;
  for (unsigned step = 0; step < max_steps; ++step) {
    u64 nxt = z_of(cur, cache).z;
    chain.iterates.push_back(nxt);
    if (nxt == cur) {
      chain.fixed_point = nxt;
      return chain;
    }
    cur = nxt;
  }
  throw no_convergence_error("iterate_z: no fixed point within " +
                             std::to_string(max_steps) + " steps");
}

ZeCache::ZeCache(std::filesystem::path file) : file_(std::move(file)) {
  std::ifstream in(file_);
  if (!in) return; // missing file is fine; it will be created on flush
  std::string line;
  if (!std::getline(in, line) || line != "p,z,e")
    throw std::runtime_error("ZeCache: bad header in " + file_.string());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    u64 p = 0, z = 0;
    unsigned e = 0;
    if (std::sscanf(line.c_str(), "%" SCNu64 ",%" SCNu64 ",%u", &p, &z, &e) != 3 ||
        p < 2 || z == 0 || e == 0)
      throw std::runtime_error("ZeCache: bad row at " + file_.string() + ":" +
                               std::to_string(lineno));
    map_[p] = {z, e};
  }
}

ZeCache::~ZeCache() {
  try {
    flush();
  } catch (...) {
    // Destructor must not throw; a failed flush loses only cache warmth.
  }
}

std::optional<std::pair<u64, unsigned>> ZeCache::find(u64 p) const {
  std::shared_lock lock(mu_);
  auto it = map_.find(p);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void ZeCache::put(u64 p, u64 z, unsigned e) {
  std::unique_lock lock(mu_);
  auto [it, inserted] = map_.emplace(p, std::make_pair(z, e));
  if (inserted) dirty_ = true;
}

std::size_t ZeCache::size() const {
  std::shared_lock lock(mu_);
  return map_.size();
}

void ZeCache::flush() {
  std::unique_lock lock(mu_);
  if (!dirty_ || file_.empty()) return;
  std::vector<u64> ps;
  ps.reserve(map_.size());
  for (const auto& [p, ze] : map_) ps.push_back(p);
  std::sort(ps.begin(), ps.end());

  std::filesystem::path tmp = file_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("ZeCache: cannot write " + tmp.string());
    out << "p,z,e\n";
    for (u64 p : ps) {
      const auto& [z, e] = map_.at(p);
      out << p << ',' << z << ',' << e << '\n';
    }
    if (!out) throw std::runtime_error("ZeCache: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, file_);
  dirty_ = false;
}

} // namespace selffib
