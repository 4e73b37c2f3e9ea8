#pragma once

#include <cstdint>
#include <functional>

namespace pg {

// hardware concurrency, at least 1
int default_threads();

// runs fn(i) for i in [0, count) on up to `threads` workers; blocks until done
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t, int)> &fn);

// splitmix64 derivation of independent per-trial seeds
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace pg
