#include "tickvar/random.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tickvar::rng {

std::uint64_t fair_binomial(Engine& eng, std::uint64_t bits) {
  std::uint64_t count = 0;
  while (bits >= 64) {
    count += static_cast<std::uint64_t>(std::popcount(eng()));
    bits -= 64;
  }
  if (bits > 0) {
    const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
    count += static_cast<std::uint64_t>(std::popcount(eng() & mask));
  }
  return count;
}

void for_each_chunk(std::size_t count, std::size_t chunk_size,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  chunk_size = std::max<std::size_t>(chunk_size, 1);
  const std::size_t chunks = (count + chunk_size - 1) / chunk_size;
  const std::size_t workers =
      std::min<std::size_t>(chunks, std::max(1u, std::thread::hardware_concurrency()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t chunk = next.fetch_add(1);
      if (chunk >= chunks) return;
      const std::size_t begin = chunk * chunk_size;
      const std::size_t end = std::min(count, begin + chunk_size);
      try {
        body(chunk, begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks);
        return;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t i = 1; i < workers; ++i) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace tickvar::rng
