#ifndef ASYM_PARALLEL_HPP
#define ASYM_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace asym {

/// Worker count: ASYM_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

/// Calls body(begin, end) over disjoint chunks of [0, n). Chunks may run on
/// separate threads; callers reduce results in index order.
template <typename Body>
void parallel_chunks(std::size_t n, Body&& body) {
  const std::size_t workers = std::min(thread_count(), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    body(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (std::size_t start = 0; start < n; start += chunk) {
    const std::size_t end = std::min(n, start + chunk);
    pool.emplace_back([&body, start, end] { body(start, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace asym

#endif  // ASYM_PARALLEL_HPP
