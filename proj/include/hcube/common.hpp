#pragma once

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string_view>

namespace hcube {

using Index = Eigen::Index;
using Mask = std::uint64_t;
using Vec = Eigen::VectorXd;

inline constexpr std::string_view kVersion = "0.1.0";

inline int popcount(Mask m) { return std::popcount(m); }

// Neumaier-compensated accumulator. All long reductions in the library go
// through this (or through blocked_sum below) so results do not depend on
// summation luck.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

namespace par {

// 0 restores the hardware default.
void set_thread_count(int n);
int thread_count();

// Splits [0, n) into contiguous chunks and runs fn(begin, end) on each.
// Chunk boundaries depend on the active thread count, so fn must do only
// elementwise-independent work (disjoint writes, no accumulation).
void for_range(Index n, const std::function<void(Index, Index)>& fn);

// Runs fn(block) for every block in [0, num_blocks). The decomposition is
// the caller's and is fixed, so per-block outputs are identical whatever
// the thread count; only the caller-side merge order matters.
void for_blocks(Index num_blocks, const std::function<void(Index)>& fn);

}  // namespace par

// Deterministic reduction of term(0) + ... + term(n-1): fixed 64Ki blocks,
// compensated partial per block, partials combined in block order. The
// result is bit-identical for any thread count.
template <class F>
double blocked_sum(Index n, F&& term) {
  constexpr Index kBlock = Index{1} << 16;
  const Index num_blocks = (n + kBlock - 1) / kBlock;
  if (num_blocks <= 1) {
    CompensatedSum s;
    for (Index i = 0; i < n; ++i) s.add(term(i));
    return s.value();
  }
  Vec partial(num_blocks);
  par::for_blocks(num_blocks, [&](Index b) {
    CompensatedSum s;
    const Index end = std::min(n, (b + 1) * kBlock);
    for (Index i = b * kBlock; i < end; ++i) s.add(term(i));
    partial[b] = s.value();
  });
  CompensatedSum total;
  for (Index b = 0; b < num_blocks; ++b) total.add(partial[b]);
  return total.value();
}

}  // namespace hcube
