#include "hcube/prooftrace.hpp"

#include "hcube/certificate.hpp"
#include "hcube/influence.hpp"
#include "hcube/noise.hpp"
#include "hcube/rng.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hcube {

FourierExpansion q_s(const FourierExpansion& e, Mask s) {
  Vec c = e.coeffs();
  par::for_range(c.size(), [&](Index b, Index en) {
    for (Index r = b; r < en; ++r)
      if (popcount(static_cast<Mask>(r) & s) != 1) c[r] = 0.0;
  });
  return FourierExpansion(e.n(), std::move(c));
}

double expected_shift_identity_gap(const CubeFunction& f, Mask s,
                                   double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("expected_shift_identity_gap: alpha in [0,1]");
  const int n = f.n();
  if (s >> n)
    throw std::invalid_argument("expected_shift_identity_gap: S not in [n]");
  const int k = popcount(s);
  if (k > 20)
    throw std::invalid_argument("expected_shift_identity_gap: |S| > 20");
  const Index size = f.size();

  // Left side: f(x) - sum over subsets S' of S of w(S') f(x^S').
  Vec lhs = f.values();
  Mask sub = s;
  for (;;) {
    const int j = popcount(sub);
    const double w = std::pow(alpha, j) * std::pow(1.0 - alpha, k - j);
    if (w != 0.0) {
      const auto& v = f.values();
      par::for_range(size, [&](Index b, Index en) {
        for (Index x = b; x < en; ++x)
          lhs[x] -= w * v[static_cast<Index>(static_cast<Mask>(x) ^ sub)];
      });
    }
    if (sub == 0) break;
    sub = (sub - 1) & s;
  }

  // Right side: coefficients modulated by 2 v_alpha(|R cap S|) when the
  // meet is nonempty, zero otherwise.
  const Vec v = v_alpha(alpha, std::max(k, 1));
  FourierExpansion e = fourier_transform(f);
  Vec rhs_c = e.coeffs();
  par::for_range(size, [&](Index b, Index en) {
    for (Index r = b; r < en; ++r) {
      const int m = popcount(static_cast<Mask>(r) & s);
      rhs_c[r] = m == 0 ? 0.0 : 2.0 * v[m - 1] * rhs_c[r];
    }
  });
  walsh_hadamard_inplace(rhs_c);

  double gap = 0.0;
  for (Index x = 0; x < size; ++x)
    gap = std::max(gap, std::abs(lhs[x] - rhs_c[x]));
  return gap;
}

namespace {

struct SupportTerm {
  Mask set = 0;
  double coeff = 0.0;
};

// Shared Monte Carlo body for both B flavors: S at the given per-coordinate
// rate, x uniform, inner value sum_{i in S} |sum_{R cap S = {i}} c_R
// chi_{R\{i}}(x)|.
McEstimate run_b_estimator(int n, const std::vector<SupportTerm>& support,
                           double rate, std::int64_t trials,
                           std::uint64_t seed) {
  if (trials <= 0)
    throw std::invalid_argument("B estimator: trials must be positive");
  constexpr std::int64_t kTrialsPerBlock = 1024;
  const Index num_blocks =
      static_cast<Index>((trials + kTrialsPerBlock - 1) / kTrialsPerBlock);
  Vec block_sum(num_blocks), block_sq(num_blocks);
  par::for_blocks(num_blocks, [&](Index b) {
    auto g = rng::Stream::for_block(seed, rng::kStreamTraceB,
                                    static_cast<std::uint64_t>(b));
    std::vector<double> acc(static_cast<std::size_t>(std::max(n, 1)), 0.0);
    const std::int64_t lo = b * kTrialsPerBlock;
    const std::int64_t hi = std::min(trials, lo + kTrialsPerBlock);
    CompensatedSum s, sq;
    for (std::int64_t t = lo; t < hi; ++t) {
      const Mask sel = g.bernoulli_mask(n, rate);
      const Mask x = g.fair_mask(n);
      for (const auto& term : support) {
        const Mask meet = term.set & sel;
        if (std::has_single_bit(meet))
          acc[static_cast<std::size_t>(std::countr_zero(meet))] +=
              term.coeff * chi(term.set ^ meet, x);
      }
      double inner = 0.0;
      Mask rest = sel;
      while (rest) {
        const int i = std::countr_zero(rest);
        inner += std::abs(acc[static_cast<std::size_t>(i)]);
        acc[static_cast<std::size_t>(i)] = 0.0;
        rest &= rest - 1;
      }
      s.add(inner);
      sq.add(inner * inner);
    }
    block_sum[b] = s.value();
    block_sq[b] = sq.value();
  });
  CompensatedSum s, sq;
  for (Index b = 0; b < num_blocks; ++b) {
    s.add(block_sum[b]);
    sq.add(block_sq[b]);
  }
  McEstimate out;
  out.trials = trials;
  const double inv = 1.0 / static_cast<double>(trials);
  out.mean = s.value() * inv;
  double var = sq.value() * inv - out.mean * out.mean;
  if (trials > 1) var *= static_cast<double>(trials) / (trials - 1);
  if (var < 0) var = 0;
  out.std_error = std::sqrt(var * inv);
  return out;
}

std::vector<SupportTerm> collect_support(const FourierExpansion& e) {
  std::vector<SupportTerm> support;
  const auto& c = e.coeffs();
  for (Index r = 0; r < c.size(); ++r)
    if (c[r] != 0.0) support.push_back({static_cast<Mask>(r), c[r]});
  return support;
}

}  // namespace

McEstimate estimate_b_homogeneous(const CubeFunction& f, int d,
                                  std::int64_t trials, std::uint64_t seed) {
  if (d < 1)
    throw std::invalid_argument("estimate_b_homogeneous: d must be >= 1");
  FourierExpansion e = fourier_transform(f);
  const auto& c = e.coeffs();
  for (Index r = 0; r < c.size(); ++r)
    if (std::abs(c[r]) > 1e-12 && popcount(static_cast<Mask>(r)) != d)
      throw std::invalid_argument(
          "estimate_b_homogeneous: coefficient mass off the degree-d layer");
  return run_b_estimator(f.n(), collect_support(e), 1.0 / d, trials, seed);
}

McEstimate estimate_b_general(const FourierExpansion& e, int d,
                              std::int64_t trials, std::uint64_t seed) {
  if (d < 2)
    throw std::invalid_argument("estimate_b_general: d must be >= 2");
  if (degree(e) > d)
    throw std::invalid_argument("estimate_b_general: degree exceeds d");
  const double rho = 1.0 + 1.0 / (static_cast<double>(d) * d - 1.0);
  const FourierExpansion weighted = apply_noise(e, rho);
  return run_b_estimator(e.n(), collect_support(weighted),
                         1.0 / (static_cast<double>(d) * d), trials, seed);
}

TraceReport theorem_trace(const CubeFunction& f, const TraceOptions& opts) {
  TraceReport rep;
  rep.n = f.n();
  rep.range_width = range_width(f);
  rep.inf_total = total_l1(f);

  FourierExpansion e = fourier_transform(f);
  rep.d = degree(e);
  rep.bound_dlogd = rep.range_width * rep.d * std::log(rep.d + 2.0);

  if (rep.d < 2) {
    rep.degenerate_low_degree = true;
    rep.lower_ok = true;
    rep.upper_ok = true;
    return rep;
  }

  bool layered = true;
  for (Index r = 0; r < e.size() && layered; ++r)
    if (std::abs(e.coeffs()[r]) > 1e-12 &&
        popcount(static_cast<Mask>(r)) != rep.d)
      layered = false;
  if (opts.mode == 1 && !layered)
    throw std::invalid_argument(
        "theorem_trace: homogeneous mode on non-homogeneous input");
  rep.homogeneous = opts.mode == 0 ? layered : opts.mode == 1;

  McEstimate b;
  double denom;
  if (rep.homogeneous) {
    b = estimate_b_homogeneous(f, rep.d, opts.trials, opts.seed);
    denom = rep.inf_total / rep.d;
  } else {
    b = estimate_b_general(e, rep.d, opts.trials, opts.seed);
    denom = rep.inf_total / (static_cast<double>(rep.d) * rep.d);
  }
  rep.b_estimate = b.mean;
  rep.b_std_error = b.std_error;

  // Sampled sup of the selector part, weighted in the general flavor.
  const double rate =
      rep.homogeneous ? 1.0 / rep.d
                      : 1.0 / (static_cast<double>(rep.d) * rep.d);
  const FourierExpansion base =
      rep.homogeneous
          ? e
          : apply_noise(e, 1.0 + 1.0 / (static_cast<double>(rep.d) * rep.d -
                                        1.0));
  auto g = rng::Stream::for_block(opts.seed, rng::kStreamTraceQs, 0);
  for (int t = 0; t < opts.qs_samples; ++t) {
    const Mask sel = g.bernoulli_mask(rep.n, rate);
    rep.qs_max = std::max(rep.qs_max, sup_norm(inverse_transform(q_s(base, sel))));
  }

  rep.ratio_b_lower = denom > 0 ? rep.b_estimate / denom : 0.0;
  rep.ratio_qs =
      rep.bound_dlogd > 0 ? rep.qs_max / rep.bound_dlogd : 0.0;
  rep.lower_ok = rep.b_estimate + 1e-12 >= 0.1 * denom;
  rep.upper_ok = rep.b_estimate <= 100.0 * rep.bound_dlogd + 1e-12;
  return rep;
}

}  // namespace hcube
