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

namespace bergman {

namespace detail {
inline std::atomic<int>& thread_setting() {
  static std::atomic<int> n{0};
  return n;
}

// Set on worker threads so nested parallel_for calls run inline.
inline bool& in_worker() {
  thread_local bool flag = false;
  return flag;
}
}  // namespace detail

// Worker count for case-level sweeps. 0 means "read BERGMAN_THREADS, default 1".
inline void set_thread_count(int n) { detail::thread_setting().store(std::max(0, n)); }

inline int thread_count() {
  int n = detail::thread_setting().load();
  if (n > 0) return n;
  if (const char* env = std::getenv("BERGMAN_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return 1;
}

// Runs fn(i) for i in [0, n). Work is handed out by an atomic counter, so the
// assignment of indices to threads varies, but every index runs exactly once and
// callers store results by index. The first exception is rethrown on the caller.
// Calls made from inside a worker run serially.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, int threads = 0) {
  if (threads <= 0) threads = detail::in_worker() ? 1 : thread_count();
  threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    detail::in_worker() = true;
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lk(err_mu);
        if (!err) err = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace bergman
