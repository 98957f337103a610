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

namespace thinspace {

namespace detail {
inline std::atomic<unsigned>& thread_cap() {
  static std::atomic<unsigned> cap{0};
  return cap;
}
}  // namespace detail

/// Caps the worker count used by every parallel loop. 0 restores the default
/// (THINSPACE_THREADS, then hardware concurrency).
inline void set_thread_limit(unsigned threads) { detail::thread_cap() = threads; }

inline unsigned thread_limit() {
  unsigned cap = detail::thread_cap();
  if (cap > 0) return cap;
  if (const char* env = std::getenv("THINSPACE_THREADS")) {
    try {
      int parsed = std::stoi(env);
      if (parsed > 0) return static_cast<unsigned>(parsed);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(task, worker) for task in [0, count). Tasks are handed out
/// dynamically; callers must make results independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(thread_limit(), std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i, 0u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&](unsigned worker) {
    try {
      for (std::size_t i = next++; i < count; i = next++) fn(i, worker);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = count;
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body, w);
  body(0);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Number of distinct worker indices parallel_for may pass for `count` tasks.
inline unsigned worker_count(std::size_t count) {
  return static_cast<unsigned>(
      std::min<std::size_t>(thread_limit(), std::max<std::size_t>(count, 1)));
}

}  // namespace thinspace
