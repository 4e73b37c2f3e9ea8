#include "planchgrow/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pg {

int default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t, int)> &fn) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::int64_t>(count, 1))));
  if (threads == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i, 0);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::int64_t i = next++; i < count; i = next++) fn(i, t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
        next = count;
      }
    });
  for (auto &th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace pg
