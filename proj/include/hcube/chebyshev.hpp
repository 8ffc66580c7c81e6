#pragma once

#include "hcube/common.hpp"

namespace hcube {

// First-kind Chebyshev value by the three-term recurrence. Stable on
// [-1, 1]; outside, forward error stays tiny because the dominant kernel
// solution is the one being computed.
double chebyshev_recurrence(int d, double t);

// Closed form ((t + sqrt(t^2-1))^d + (t + sqrt(t^2-1))^-d)/2 for |t| >= 1.
double chebyshev_closed_form(int d, double t);

// Dispatch: recurrence on [-1, 1] and for small d everywhere (exact on
// small integer arguments), closed form for large d outside the interval.
double chebyshev_eval(int d, double t);

// exp(2 d sqrt(2 gamma + gamma^2)), the growth envelope at 1 + gamma.
double paturi_bound(int d, double gamma);

struct GrowthCheck {
  int d = 0;
  double gamma = 0.0;     // 1 / (d^2 - 1)
  double value = 0.0;     // T_d(1 + gamma)
  double bound = 0.0;     // envelope at the same point
  bool ok = false;        // value <= bound
};

// Evaluates the extremal polynomial just past the interval edge, where the
// envelope argument makes the bound O(1).
GrowthCheck extremal_growth_check(int d);

// Given monomial coefficients of q (lowest degree first, deg q <= d, and
// sup |q| <= 1 on [-1, 1] checked on a Chebyshev grid), certifies
// |q(rho')| <= T_d(rho') + 1e-8 at rho' = 1 + 1/(d^2 - 1). Throws if the
// boundedness hypothesis fails on the grid. Requires d >= 2.
bool extrapolation_bound_check(const Vec& coeffs, int d);

}  // namespace hcube
