#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace coherent {

// Worker cap: COHERENT_THREADS if set (clamped to [1, 256]), else hardware
// concurrency. Read per call so tests can toggle the variable in-process.
int worker_count();

// Runs fn(begin, end) over a disjoint contiguous partition of [0, n).
// Every call site writes disjoint output slots, so results are bit-identical
// for any worker count; there are no cross-worker reductions anywhere.
template <class F>
void parallel_chunks(std::int64_t n, F&& fn) {
  if (n <= 0) return;
  std::int64_t workers = std::min<std::int64_t>(worker_count(), n);
  if (workers <= 1) {
    fn(std::int64_t{0}, n);
    return;
  }
  std::int64_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::int64_t w = 0; w < workers; ++w) {
    std::int64_t begin = w * chunk;
    std::int64_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace coherent
