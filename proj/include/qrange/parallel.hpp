#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qrange {

/// Sampling work is split into fixed-size chunks, each with its own seed, so
/// results do not depend on how many threads run them.
inline constexpr std::size_t kSampleChunk = 4096;

/// Calls body(chunk_index, begin, end) for every chunk of [0, count).
template <class Body>
void for_each_chunk(std::size_t count, std::size_t chunk, Body&& body) {
  const std::size_t chunks = (count + chunk - 1) / chunk;
  if (chunks == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(chunks, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c, c * chunk, std::min(count, (c + 1) * chunk));
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t c = t; c < chunks; c += workers) {
          body(c, c * chunk, std::min(count, (c + 1) * chunk));
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace qrange
