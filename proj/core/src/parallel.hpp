#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bellopt::detail {

// Runs fn(chunk) for chunk in [0, chunks) on up to `threads` workers.
// Chunks are claimed dynamically; callers store per-chunk results and
// combine them in chunk order, so output does not depend on `threads`.
template <typename Fn>
void for_each_chunk(std::int64_t chunks, int threads, Fn fn) {
  const int workers = static_cast<int>(std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(chunks, 1)));
  if (workers == 1) {
    for (std::int64_t c = 0; c < chunks; ++c) fn(c);
    return;
  }
  std::int64_t next = 0;
  std::mutex m;
  std::exception_ptr error;
  auto work = [&] {
    for (;;) {
      std::int64_t c;
      {
        std::lock_guard lock(m);
        if (error || next >= chunks) return;
        c = next++;
      }
      try {
        fn(c);
      } catch (...) {
        std::lock_guard lock(m);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace bellopt::detail
