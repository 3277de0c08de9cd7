#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "selffib/ints.hpp"

namespace selffib::detail {

inline unsigned resolve_jobs(unsigned jobs) {
  if (jobs) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Runs fn(block_index, lo, hi) over [first, last] split into fixed blocks.
// Blocks are claimed by an atomic counter; callers index per-block output by
// block_index, so merged results do not depend on scheduling.
template <typename Fn>
void parallel_blocks(u64 first, u64 last, u64 block_size, unsigned jobs,
                     Fn&& fn) {
  if (first > last) return;
  u64 total = last - first + 1;
  u64 nblocks = (total + block_size - 1) / block_size;
  unsigned threads = resolve_jobs(jobs);
  if (threads > nblocks) threads = static_cast<unsigned>(nblocks);
  if (threads <= 1) {
    for (u64 bi = 0; bi < nblocks; ++bi) {
      u64 lo = first + bi * block_size;
      u64 hi = std::min(last, lo + block_size - 1);
      fn(bi, lo, hi);
    }
    return;
  }
  std::atomic<u64> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      try {
        for (;;) {
          u64 bi = next.fetch_add(1, std::memory_order_relaxed);
          if (bi >= nblocks) return;
          u64 lo = first + bi * block_size;
          u64 hi = std::min(last, lo + block_size - 1);
          fn(bi, lo, hi);
        }
      } catch (...) {
        std::scoped_lock lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(nblocks, std::memory_order_relaxed); // drain remaining work
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

} // namespace selffib::detail
