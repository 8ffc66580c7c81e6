#pragma once

#include "hcube/cube.hpp"
#include "hcube/rng.hpp"

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hcube {

// Multiplies each coefficient by rho^|S|. rho in [-1, 1] is the classical
// semigroup range; other finite rho is allowed (the certificate machinery
// extrapolates past 1) and simply reweights.
template <class ScalarT>
FourierExpansionT<ScalarT> apply_noise(const FourierExpansionT<ScalarT>& e,
                                       ScalarT rho) {
  using std::isfinite;
  if (!isfinite(rho)) throw std::invalid_argument("apply_noise: rho not finite");
  std::vector<ScalarT> powers(static_cast<std::size_t>(e.n()) + 1);
  powers[0] = ScalarT(1);
  for (int k = 1; k <= e.n(); ++k) powers[k] = powers[k - 1] * rho;
  typename FourierExpansionT<ScalarT>::VecT c = e.coeffs();
  auto* data = c.data();
  par::for_range(c.size(), [&](Index b, Index en) {
    for (Index s = b; s < en; ++s)
      data[s] *= powers[static_cast<std::size_t>(popcount(static_cast<Mask>(s)))];
  });
  return FourierExpansionT<ScalarT>(e.n(), std::move(c));
}

// One rho-correlated neighbor of x: each coordinate kept with probability
// (1+rho)/2, flipped otherwise, independently. Consumes exactly n draws.
inline CubePoint sample_correlated(CubePoint x, double rho, rng::Stream& g) {
  if (!(rho >= -1.0 && rho <= 1.0))
    throw std::invalid_argument("sample_correlated: rho must be in [-1, 1]");
  const double keep = 0.5 * (1.0 + rho);
  Mask flips = 0;
  for (int i = 0; i < x.n; ++i)
    if (!g.bernoulli(keep)) flips |= Mask{1} << i;
  return flip_point(x, flips);
}

struct NoiseCheck {
  double mc_estimate = 0.0;
  double fourier_value = 0.0;
  double std_error = 0.0;
  double z_score = 0.0;
  std::int64_t samples = 0;
};

// Monte Carlo E[f(y)] over rho-correlated y against the coefficient-side
// value of the smoothed function at x. Fixed 4096-trial blocks with
// independent substreams make the estimate thread-count independent.
inline NoiseCheck noise_mc_check(const CubeFunction& f, double rho,
                                 CubePoint x, std::int64_t samples,
                                 std::uint64_t seed) {
  if (samples <= 0)
    throw std::invalid_argument("noise_mc_check: samples must be positive");
  if (!(rho >= -1.0 && rho <= 1.0))
    throw std::invalid_argument("noise_mc_check: rho must be in [-1, 1]");
  if (x.n != f.n() || x.index >> f.n())
    throw std::invalid_argument("noise_mc_check: point outside the cube");

  constexpr std::int64_t kTrialsPerBlock = 4096;
  const Index num_blocks =
      static_cast<Index>((samples + kTrialsPerBlock - 1) / kTrialsPerBlock);
  Vec block_sum(num_blocks), block_sq(num_blocks);
  par::for_blocks(num_blocks, [&](Index b) {
    auto g = rng::Stream::for_block(seed, rng::kStreamNoiseMc,
                                    static_cast<std::uint64_t>(b));
    const std::int64_t lo = b * kTrialsPerBlock;
    const std::int64_t hi = std::min(samples, lo + kTrialsPerBlock);
    CompensatedSum s, sq;
    for (std::int64_t t = lo; t < hi; ++t) {
      const double v = f(sample_correlated(x, rho, g));
      s.add(v);
      sq.add(v * v);
    }
    block_sum[b] = s.value();
    block_sq[b] = sq.value();
  });
  CompensatedSum s, sq;
  for (Index b = 0; b < num_blocks; ++b) {
    s.add(block_sum[b]);
    sq.add(block_sq[b]);
  }
  NoiseCheck out;
  out.samples = samples;
  const double inv = 1.0 / static_cast<double>(samples);
  out.mc_estimate = s.value() * inv;
  double var = sq.value() * inv - out.mc_estimate * out.mc_estimate;
  if (samples > 1) var *= static_cast<double>(samples) / (samples - 1);
  if (var < 0) var = 0;
  out.std_error = std::sqrt(var * inv);

  out.fourier_value =
      evaluate_expansion(apply_noise(fourier_transform(f), rho), x.index);

  const double diff = out.mc_estimate - out.fourier_value;
  if (out.std_error > 0)
    out.z_score = diff / out.std_error;
  else
    out.z_score = std::abs(diff) <= 1e-12
                      ? 0.0
                      : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace hcube
