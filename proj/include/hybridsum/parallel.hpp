#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "hybridsum/field.hpp"

namespace hybridsum {

// Worker count: HYBRIDSUM_THREADS caps it, default is the hardware count.
inline unsigned worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("HYBRIDSUM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && static_cast<unsigned long>(v) < 1024) return static_cast<unsigned>(v);
  }
  return hw;
}

// Runs f(begin, end) on contiguous index stripes. Callers own any merging;
// stripes are disjoint so deterministic merges are free.
template <typename F>
void parallel_stripes(u64 begin, u64 end, F&& f, unsigned workers = worker_count()) {
  if (end <= begin) return;
  const u64 total = end - begin;
  if (workers <= 1 || total < 2048) {
    f(begin, end);
    return;
  }
  if (workers > total) workers = static_cast<unsigned>(total);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const u64 chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const u64 lo = begin + static_cast<u64>(w) * chunk;
    if (lo >= end) break;
    const u64 hi = std::min(end, lo + chunk);
    pool.emplace_back([&f, lo, hi] { f(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace hybridsum
