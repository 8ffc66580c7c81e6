#include "hcube/certificate.hpp"

#include <cmath>
#include <stdexcept>

namespace hcube {

Vec v_alpha(double alpha, int len) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("v_alpha: alpha must be in [0, 1]");
  if (len < 0) throw std::invalid_argument("v_alpha: len must be >= 0");
  Vec v(len);
  const double base = 1.0 - 2.0 * alpha;
  double pw = 1.0;
  for (int k = 1; k <= len; ++k) {
    pw *= base;
    v[k - 1] = 0.5 * (1.0 - pw);
  }
  return v;
}

Vec v_gamma_prime(double gamma, int len) {
  if (len < 0) throw std::invalid_argument("v_gamma_prime: len must be >= 0");
  Vec v(len);
  double pw = 1.0;
  for (int k = 1; k <= len; ++k) {
    pw *= gamma;
    v[k - 1] = pw;
  }
  return v;
}

Vec gamma_grid(int d) {
  if (d < 1) throw std::invalid_argument("gamma_grid: d must be >= 1");
  Vec g(d);
  const double denom = 2.0 * d;
  if (d % 2 == 0) {
    for (int i = 1; i <= d / 2; ++i) g[i - 1] = (2 * (i - 1) - d) / denom;
    for (int i = d / 2 + 1; i <= d; ++i) g[i - 1] = (2 * i - d) / denom;
  } else {
    for (int i = 1; i <= (d - 1) / 2; ++i) g[i - 1] = (2 * i - 1 - d) / denom;
    for (int i = (d + 1) / 2; i <= d; ++i) g[i - 1] = (2 * i + 1 - d) / denom;
  }
  for (int i = 0; i < d; ++i) {
    if (g[i] == 0.0 || g[i] < -1.0 || g[i] > 1.0)
      throw std::logic_error("gamma_grid: degenerate entry");
    for (int j = 0; j < i; ++j)
      if (g[i] == g[j]) throw std::logic_error("gamma_grid: repeated entry");
  }
  return g;
}

GammaCertificate solve_certificate(int d) {
  GammaCertificate cert;
  cert.d = d;
  cert.gammas = gamma_grid(d);
  const Vec& g = cert.gammas;
  cert.x = Vec(d);

  // x_k = prod_{j != k} (-gamma_j) / (gamma_k * prod_{j != k} (gamma_k -
  // gamma_j)), i.e. the Lagrange basis value at 0 divided by gamma_k.
  // Products run to ~d! in magnitude, so signs and log-magnitudes are
  // carried separately.
  for (int k = 0; k < d; ++k) {
    double log_mag = -std::log(std::abs(g[k]));
    int neg = g[k] < 0 ? 1 : 0;
    for (int j = 0; j < d; ++j) {
      if (j == k) continue;
      log_mag += std::log(std::abs(g[j])) - std::log(std::abs(g[k] - g[j]));
      if (-g[j] < 0) ++neg;
      if (g[k] - g[j] < 0) ++neg;
    }
    cert.x[k] = (neg & 1 ? -1.0 : 1.0) * std::exp(log_mag);
  }

  // Moment residuals, compensated; powers kept per column.
  Vec pw = Vec::Ones(d);
  double worst = 0.0;
  for (int k = 1; k <= d; ++k) {
    CompensatedSum row;
    for (int i = 0; i < d; ++i) {
      pw[i] *= g[i];
      row.add(cert.x[i] * pw[i]);
    }
    const double target = k == 1 ? 1.0 : 0.0;
    worst = std::max(worst, std::abs(row.value() - target));
  }
  cert.residual_inf = worst;

  CompensatedSum l1, harm;
  for (int i = 0; i < d; ++i) {
    l1.add(std::abs(cert.x[i]));
    harm.add(1.0 / std::abs(g[i]));
  }
  cert.l1_norm = l1.value();
  cert.harmonic_bound = harm.value();

  if (d <= 64 && cert.residual_inf > 1e-8)
    throw std::runtime_error("solve_certificate: residual above tolerance");
  return cert;
}

std::vector<CertificateGrowthRow> certificate_growth_table(int d_max) {
  if (d_max < 1)
    throw std::invalid_argument("certificate_growth_table: d_max must be >= 1");
  std::vector<CertificateGrowthRow> rows(static_cast<std::size_t>(d_max));
  par::for_blocks(d_max, [&](Index b) {
    const int d = static_cast<int>(b) + 1;
    const GammaCertificate c = solve_certificate(d);
    rows[b] = {d, c.residual_inf, c.l1_norm, c.harmonic_bound,
               c.l1_norm / (d * std::log(d + 1.0))};
  });
  return rows;
}

}  // namespace hcube
