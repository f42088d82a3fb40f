#include "patrolgame/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace patrolgame::parallel {

namespace {
std::atomic<std::size_t> g_cap{0};
}

void set_max_threads(std::size_t n) { g_cap = n; }

std::size_t max_threads() {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t cap = g_cap.load();
  return cap == 0 ? hw : std::min(cap, hw);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  const std::size_t workers = std::min(max_threads(), n);
  if (workers <= 1) {
    if (n > 0) body(0, n);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace patrolgame::parallel
