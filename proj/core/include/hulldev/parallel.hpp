#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hulldev {

inline int default_threads() { return std::max(1, static_cast<int>(std::thread::hardware_concurrency())); }

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Callers write
/// results into per-index slots, so output never depends on scheduling. The
/// first exception thrown by any task is rethrown on the calling thread.
template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::clamp(threads, 1, std::max(1, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace hulldev
