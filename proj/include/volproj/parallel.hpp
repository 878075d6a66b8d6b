#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace volproj {

struct ExecPolicy {
  int workers = 1;
};

// Monte Carlo draws per derived random stream.
inline constexpr std::uint64_t kSampleChunk = 1u << 13;
// Subset evaluations per parallel task.
inline constexpr std::uint64_t kSubsetChunk = 1u << 12;

// Splits [0, total) into fixed-size chunks and invokes fn(chunk_index, begin,
// end) once per chunk. Chunk boundaries depend only on total and chunk_size,
// never on the worker count, so any reduction keyed by chunk index gives
// bit-identical results for 1 and N workers.
template <typename Fn>
void run_chunks(std::uint64_t total, std::uint64_t chunk_size, const ExecPolicy& exec, Fn&& fn) {
  if (total == 0) return;
  const std::uint64_t nchunks = (total + chunk_size - 1) / chunk_size;
  auto run_one = [&](std::uint64_t c) {
    const std::uint64_t begin = c * chunk_size;
    const std::uint64_t end = std::min(begin + chunk_size, total);
    fn(c, begin, end);
  };
  const std::uint64_t workers =
      std::min<std::uint64_t>(std::max(1, exec.workers), nchunks);
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < nchunks; ++c) run_one(c);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
        if (c >= nchunks) break;
        run_one(c);
      }
    });
  }
  for (auto& t : pool) t.join();
}

inline std::uint64_t chunk_count(std::uint64_t total, std::uint64_t chunk_size) {
  return total == 0 ? 0 : (total + chunk_size - 1) / chunk_size;
}

}  // namespace volproj
