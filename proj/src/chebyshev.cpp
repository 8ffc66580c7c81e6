#include "hcube/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hcube {

namespace {
constexpr int kRecurrenceCutover = 32;

double horner(const Vec& coeffs, double t) {
  double acc = 0.0;
  for (Index k = coeffs.size() - 1; k >= 0; --k) acc = acc * t + coeffs[k];
  return acc;
}
}  // namespace

double chebyshev_recurrence(int d, double t) {
  if (d < 0) throw std::invalid_argument("chebyshev: d must be >= 0");
  if (d == 0) return 1.0;
  double prev = 1.0;
  double cur = t;
  for (int k = 2; k <= d; ++k) {
    const double next = 2.0 * t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double chebyshev_closed_form(int d, double t) {
  if (d < 0) throw std::invalid_argument("chebyshev: d must be >= 0");
  const double a = std::abs(t);
  if (a < 1.0)
    throw std::invalid_argument("chebyshev_closed_form: |t| must be >= 1");
  const double r = a + std::sqrt((a - 1.0) * (a + 1.0));
  const double v = 0.5 * (std::pow(r, d) + std::pow(r, -d));
  return (t < 0.0 && (d & 1)) ? -v : v;
}

double chebyshev_eval(int d, double t) {
  if (d < 0) throw std::invalid_argument("chebyshev: d must be >= 0");
  if (std::abs(t) <= 1.0 || d <= kRecurrenceCutover)
    return chebyshev_recurrence(d, t);
  return chebyshev_closed_form(d, t);
}

double paturi_bound(int d, double gamma) {
  if (d < 0) throw std::invalid_argument("paturi_bound: d must be >= 0");
  if (!(gamma >= 0.0))
    throw std::invalid_argument("paturi_bound: gamma must be >= 0");
  return std::exp(2.0 * d * std::sqrt(2.0 * gamma + gamma * gamma));
}

GrowthCheck extremal_growth_check(int d) {
  if (d < 2)
    throw std::invalid_argument("extremal_growth_check: d must be >= 2");
  GrowthCheck c;
  c.d = d;
  c.gamma = 1.0 / (static_cast<double>(d) * d - 1.0);
  c.value = chebyshev_eval(d, 1.0 + c.gamma);
  c.bound = paturi_bound(d, c.gamma);
  c.ok = c.value <= c.bound;
  return c;
}

bool extrapolation_bound_check(const Vec& coeffs, int d) {
  if (d < 2)
    throw std::invalid_argument("extrapolation_bound_check: d must be >= 2");
  if (coeffs.size() == 0 || coeffs.size() > d + 1)
    throw std::invalid_argument(
        "extrapolation_bound_check: need 1..d+1 monomial coefficients");
  if (!coeffs.allFinite())
    throw std::invalid_argument("extrapolation_bound_check: non-finite input");

  // Boundedness hypothesis, sampled at 1024 Chebyshev nodes.
  constexpr int kNodes = 1024;
  double grid_max = 0.0;
  for (int j = 0; j < kNodes; ++j) {
    const double t =
        std::cos((2.0 * j + 1.0) * std::numbers::pi / (2.0 * kNodes));
    grid_max = std::max(grid_max, std::abs(horner(coeffs, t)));
  }
  if (grid_max > 1.0 + 1e-9)
    throw std::invalid_argument(
        "extrapolation_bound_check: |q| exceeds 1 on [-1, 1]");

  const double rho = 1.0 + 1.0 / (static_cast<double>(d) * d - 1.0);
  return std::abs(horner(coeffs, rho)) <= chebyshev_eval(d, rho) + 1e-8;
}

}  // namespace hcube
