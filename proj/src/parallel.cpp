#include "cdsxva/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace cdsxva {

int worker_count() {
  if (const char* env = std::getenv("CDSXVA_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  const int workers = std::min(worker_count(), n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  // Chunked dynamic scheduling; chunk size keeps contention low while
  // tolerating uneven per-index cost (paths stop at default).
  const int chunk = std::max(1, n / (workers * 16));

  auto body = [&] {
    for (;;) {
      const int begin = next.fetch_add(chunk);
      if (begin >= n || failed.load(std::memory_order_relaxed)) break;
      const int end = std::min(n, begin + chunk);
      try {
        for (int i = begin; i < end; ++i) fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        break;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (failed && error) std::rethrow_exception(error);
}

}  // namespace cdsxva
