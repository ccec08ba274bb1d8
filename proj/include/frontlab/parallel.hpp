#ifndef FRONTLAB_PARALLEL_HPP
#define FRONTLAB_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace frontlab {

// Parallelism degree: FRONTLAB_THREADS if set, else hardware concurrency.
inline int threadCount() {
  if (const char* env = std::getenv("FRONTLAB_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(begin, end) over disjoint chunks of [0, n). Chunks are assigned in
// index order, so any per-chunk output combined in order stays deterministic.
inline void parallelFor(long n, const std::function<void(long, long)>& fn) {
  int threads = threadCount();
  if (threads <= 1 || n < 2048) {
    if (n > 0) fn(0, n);
    return;
  }
  long chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    long lo = t * chunk;
    long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([=] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace frontlab

#endif
