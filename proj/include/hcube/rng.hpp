#pragma once

#include "hcube/common.hpp"

#include <cstdint>
#include <random>

namespace hcube::rng {

// SplitMix64 finalizer, used to turn (seed, stream id) pairs into
// well-separated engine seeds.
inline std::uint64_t mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix(seed ^ mix(stream));
}

// Operation tags keep substreams of the same user seed from colliding
// across different samplers. Block substreams use (tag << 32) | block.
enum : std::uint64_t {
  kStreamEnsemble = 1,
  kStreamNoiseMc = 2,
  kStreamTraceB = 3,
  kStreamTraceQs = 4,
  kStreamErGraph = 5,
  kStreamCutSearch = 6,
  kStreamScan = 7,
};

// mt19937_64 with hand-rolled output mappings. The standard pins the
// engine's sequence exactly; std::*_distribution algorithms are
// implementation-defined, so they are avoided on purpose to keep results
// reproducible across toolchains.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : eng_(seed) {}

  static Stream for_block(std::uint64_t seed, std::uint64_t tag,
                          std::uint64_t block) {
    return Stream(stream_seed(seed, (tag << 32) | block));
  }

  std::uint64_t next_u64() { return eng_(); }

  // [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // [-1, 1)
  double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

  bool bernoulli(double p) { return uniform01() < p; }

  // n iid fair bits, n < 64.
  Mask fair_mask(int n) {
    return n == 0 ? 0 : (next_u64() & ((Mask{1} << n) - 1));
  }

  // n iid Bernoulli(p) bits, n < 64. Always consumes n draws.
  Mask bernoulli_mask(int n, double p) {
    Mask m = 0;
    for (int i = 0; i < n; ++i)
      if (bernoulli(p)) m |= Mask{1} << i;
    return m;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace hcube::rng
