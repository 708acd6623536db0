#include "tonguelock/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace tonguelock::par {

namespace {

std::atomic<int> g_max_workers{0};
thread_local bool t_inside_parallel = false;

int env_workers() {
  const char* env = std::getenv("TONGUELOCK_THREADS");
  if (env == nullptr) return 0;
  int v = std::atoi(env);
  return v > 0 ? v : 0;
}

}  // namespace

int max_workers() {
  int v = g_max_workers.load(std::memory_order_relaxed);
  if (v > 0) return v;
  if (int e = env_workers(); e > 0) return e;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void set_max_workers(int workers) {
  g_max_workers.store(workers > 0 ? workers : 0, std::memory_order_relaxed);
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn,
                  int workers) {
  if (n <= 0) return;
  int w = workers > 0 ? workers : max_workers();
  w = static_cast<int>(std::min<std::int64_t>(w, n));
  if (w <= 1 || t_inside_parallel) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(w));
  const std::int64_t chunk = (n + w - 1) / w;
  for (int t = 0; t < w; ++t) {
    const std::int64_t lo = t * chunk;
    const std::int64_t hi = std::min<std::int64_t>(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      t_inside_parallel = true;
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
      t_inside_parallel = false;
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace tonguelock::par
