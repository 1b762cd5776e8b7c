#pragma once

// Index-parallel loop. Each index writes only its own slot, so results do not
// depend on the thread count. QHD_THREADS overrides the worker count.

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qhd {

inline int worker_count() {
  if (const char* env = std::getenv("QHD_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

template <typename F>
void parallel_for(int count, F&& body) {
  const int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += workers) body(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace qhd
