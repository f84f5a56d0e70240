#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace omx {

/// Worker count: OMX_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
[[nodiscard]] std::size_t worker_count();

/// Calls body(i) for i in [0, count) across worker threads. Each index is
/// visited exactly once; callers write results to slot i only, which keeps the
/// output independent of scheduling. The first exception thrown is rethrown.
template <class Body>
void parallel_for(std::size_t count, Body&& body, std::size_t workers = 0) {
  if (workers == 0) workers = worker_count();
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        // Strided assignment: worker w handles w, w + workers, ...
        for (std::size_t i = w; i < count; i += workers) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            return;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace omx
