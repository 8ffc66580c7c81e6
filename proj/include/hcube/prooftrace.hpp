#pragma once

#include "hcube/cube.hpp"

#include <cstdint>

namespace hcube {

// Selector part: keeps exactly the coefficients whose set meets S in one
// element, full characters included.
FourierExpansion q_s(const FourierExpansion& e, Mask s);

// Max over all x of |E_{S'}[f(x) - f(x^{S'})] - synthesis|, where S' runs
// over subsets of S with weight alpha^|S'| (1-alpha)^(|S|-|S'|) and the
// synthesis side modulates coefficients by 2 v_alpha(|R cap S|). The left
// side enumerates 2^|S| shifts, so |S| is capped at 20.
double expected_shift_identity_gap(const CubeFunction& f, Mask s, double alpha);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
};

// E over (S, x) of sum_{i in S} |sum_{R: R cap S = {i}} c_R chi_{R\{i}}(x)|,
// with S formed by including each coordinate at the stated rate and x
// uniform. Fixed-block Monte Carlo, bit-stable for any thread count.
// Homogeneous flavor: rate 1/d, coefficients as given (all mass must sit at
// degree exactly d, tol 1e-12).
McEstimate estimate_b_homogeneous(const CubeFunction& f, int d,
                                  std::int64_t trials, std::uint64_t seed);

// General flavor: rate 1/d^2, coefficient R weighted by rho'^|R| with
// rho' = 1/(1 - 1/d^2). Requires degree(e) <= d and d >= 2.
McEstimate estimate_b_general(const FourierExpansion& e, int d,
                              std::int64_t trials, std::uint64_t seed);

struct TraceOptions {
  std::int64_t trials = 20000;
  int qs_samples = 64;
  std::uint64_t seed = 0;
  // 0: pick by the coefficient layout; 1: force homogeneous; 2: force
  // general.
  int mode = 0;
};

struct TraceReport {
  int d = 0;
  int n = 0;
  bool homogeneous = false;
  // Degree below 2 makes the chain collapse; such inputs are reported
  // through inf_total alone and flagged, not patched.
  bool degenerate_low_degree = false;
  double inf_total = 0.0;
  double range_width = 0.0;
  double b_estimate = 0.0;
  double b_std_error = 0.0;
  double qs_max = 0.0;
  double bound_dlogd = 0.0;     // range_width * d * ln(d + 2)
  double ratio_b_lower = 0.0;   // b / (inf_total / d or d^2)
  double ratio_qs = 0.0;        // qs_max / bound_dlogd
  bool lower_ok = false;        // b >= 0.1 * inf_total / d (or d^2)
  bool upper_ok = false;        // b <= 100 * bound_dlogd
};

TraceReport theorem_trace(const CubeFunction& f, const TraceOptions& opts = {});

}  // namespace hcube
