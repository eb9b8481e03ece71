#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace disclab {

namespace detail {
inline std::atomic<int>& thread_cap() {
  static std::atomic<int> cap{0};  // 0 = not yet initialized
  return cap;
}
}  // namespace detail

inline void set_max_threads(int n) { detail::thread_cap().store(n < 1 ? 1 : n); }

// Worker cap for the few loops that parallelize (independent Haar levels,
// reduced in a fixed order afterwards).  Defaults to DISCLAB_THREADS if set,
// else 1; results do not depend on the cap.
inline int max_threads() {
  int cap = detail::thread_cap().load();
  if (cap == 0) {
    cap = 1;
    if (const char* env = std::getenv("DISCLAB_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) cap = v;
    }
    detail::thread_cap().store(cap);
  }
  return cap;
}

// Runs fn(i) for i in [0, n).  Work items must be independent; callers keep
// determinism by writing into slot i and reducing sequentially afterwards.
template <class F>
void parallel_for(std::size_t n, F&& fn) {
  int workers = max_threads();
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  if (static_cast<std::size_t>(workers) > n) workers = static_cast<int>(n);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace disclab
