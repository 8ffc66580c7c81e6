#include "hcube/common.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace hcube::par {

namespace {

std::atomic<int> g_threads{0};

int effective_threads() {
  int n = g_threads.load(std::memory_order_relaxed);
  if (n <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    n = hw == 0 ? 1 : static_cast<int>(hw);
  }
  return n;
}

}  // namespace

void set_thread_count(int n) { g_threads.store(n, std::memory_order_relaxed); }

int thread_count() { return effective_threads(); }

void for_range(Index n, const std::function<void(Index, Index)>& fn) {
  if (n <= 0) return;
  const int t = static_cast<int>(
      std::min<Index>(effective_threads(), n));
  // Small ranges are not worth the thread spawn.
  if (t <= 1 || n < (Index{1} << 13)) {
    fn(0, n);
    return;
  }
  const Index chunk = (n + t - 1) / t;
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(t));
  for (int k = 0; k < t; ++k) {
    const Index b = std::min(n, k * chunk);
    const Index e = std::min(n, b + chunk);
    if (b >= e) break;
    workers.emplace_back(fn, b, e);
  }
  for (auto& w : workers) w.join();
}

void for_blocks(Index num_blocks, const std::function<void(Index)>& fn) {
  if (num_blocks <= 0) return;
  const int t = static_cast<int>(
      std::min<Index>(effective_threads(), num_blocks));
  if (t <= 1 || num_blocks == 1) {
    for (Index b = 0; b < num_blocks; ++b) fn(b);
    return;
  }
  std::atomic<Index> next{0};
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(t));
  for (int k = 0; k < t; ++k) {
    workers.emplace_back([&] {
      for (;;) {
        const Index b = next.fetch_add(1, std::memory_order_relaxed);
        if (b >= num_blocks) return;
        fn(b);
      }
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace hcube::par
