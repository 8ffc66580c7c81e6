#pragma once

#include "hcube/common.hpp"

#include <vector>

namespace hcube {

// Coefficients x solving sum_i x_i * gamma_i^k = [k == 1] for k = 1..d on
// the standard grid, together with diagnostics. The solve goes through the
// closed-form signed products (log-magnitude arithmetic), not a generic
// linear solver: the Vandermonde system is exponentially ill-conditioned
// and the closed form is what keeps d = 64 at residual <= 1e-8.
struct GammaCertificate {
  int d = 0;
  Vec gammas;
  Vec x;
  double residual_inf = 0.0;
  double l1_norm = 0.0;
  double harmonic_bound = 0.0;  // sum 1/|gamma_i|, the a-priori cap on l1
};

struct CertificateGrowthRow {
  int d = 0;
  double residual_inf = 0.0;
  double l1_norm = 0.0;
  double harmonic_bound = 0.0;
  double ratio = 0.0;  // l1_norm / (d * ln(d + 1))
};

// Sequence (1 - (1-2a)^k)/2 for k = 1..len: the probability that an
// a-biased resampling of k coordinates flips the parity character.
Vec v_alpha(double alpha, int len);

// Power column gamma^k for k = 1..len. Entrywise equal to
// 2 * (v_{1/2} - v_{(1-gamma)/2}) for gamma in [-1, 1].
Vec v_gamma_prime(double gamma, int len);

// The d-point interpolation grid: integer numerators over 2d, symmetric
// and skipping zero; entries are distinct, nonzero, in [-1, 1].
Vec gamma_grid(int d);

GammaCertificate solve_certificate(int d);

// Rows for d = 1..d_max.
std::vector<CertificateGrowthRow> certificate_growth_table(int d_max);

}  // namespace hcube
