#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace netsens {

/// Environment variable that caps the number of worker threads.
inline constexpr const char* kThreadsEnv = "NETSENS_THREADS";

namespace detail {

inline thread_local bool in_worker = false;

inline std::size_t& thread_override() {
  static std::size_t value = 0;
  return value;
}

}  // namespace detail

/// Forces the worker count (0 restores the default).
inline void set_worker_count(std::size_t n) { detail::thread_override() = n; }

inline std::size_t worker_count() {
  if (detail::thread_override() != 0) return detail::thread_override();
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv(kThreadsEnv)) {
    try {
      long v = std::stol(env);
      if (v >= 1) n = std::min(n, static_cast<std::size_t>(v));
    } catch (const std::exception&) {
    }
  }
  return n;
}

/// Calls fn(i) for every i in [0, count). Work is distributed dynamically,
/// so fn must not depend on which thread runs which index. Nested calls
/// from inside a worker run serially on that worker.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  std::size_t workers = std::min(worker_count(), count);
  if (workers <= 1 || detail::in_worker) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    detail::in_worker = true;
    for (;;) {
      std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
    detail::in_worker = false;
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace netsens
