// Acceptance gate: one line per criterion, PASS or FAIL with the measured
// numbers. Exits nonzero if any criterion fails. argv[1] must name the
// command-line binary; the determinism criterion drives it as a subprocess.

#include "hcube/certificate.hpp"
#include "hcube/chebyshev.hpp"
#include "hcube/cube.hpp"
#include "hcube/graphs.hpp"
#include "hcube/influence.hpp"
#include "hcube/io.hpp"
#include "hcube/noise.hpp"
#include "hcube/prooftrace.hpp"
#include "hcube/rng.hpp"
#include "oracles.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace hcube;

namespace {

int g_failures = 0;

void report(int index, const char* name, bool pass, const char* fmt, ...) {
  char detail[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(detail, sizeof detail, fmt, ap);
  va_end(ap);
  std::printf("criterion %2d [%s]: %s (%s)\n", index, name,
              pass ? "PASS" : "FAIL", detail);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

// ---- 1: transform round trip and energy identity -----------------------

void criterion_transforms() {
  double max_entry = 0, max_energy = 0;
  for (int k = 0; k < 500; ++k) {
    const int n = 1 + k % 16;
    auto g = rng::Stream::for_block(1000, rng::kStreamEnsemble,
                                    static_cast<std::uint64_t>(k));
    const CubeFunction f = oracle::random_function(n, g);
    const FourierExpansion e = fourier_transform(f);
    const CubeFunction back = inverse_transform(e);
    max_entry = std::max(
        max_entry, (back.values() - f.values()).cwiseAbs().maxCoeff());
    const double mean_sq = f.values().squaredNorm() / f.size();
    max_energy =
        std::max(max_energy, std::abs(mean_sq - e.coeffs().squaredNorm()));
  }
  report(1, "transform round trip and energy identity",
         max_entry <= 1e-12 && max_energy <= 1e-10,
         "500 instances, n in [1,16]; max entry error %.3g, max energy gap "
         "%.3g",
         max_entry, max_energy);
}

// ---- 2: influence route agreement and boolean collapse ------------------

void criterion_influence_routes() {
  double max_l1_gap = 0, max_l2_gap = 0;
  for (int k = 0; k < 200; ++k) {
    const int n = 2 + k % 11;
    auto g = rng::Stream::for_block(2000, rng::kStreamEnsemble,
                                    static_cast<std::uint64_t>(k));
    const CubeFunction f = oracle::random_function(n, g);
    const FourierExpansion e = fourier_transform(f);
    max_l1_gap =
        std::max(max_l1_gap, std::abs(total_l1(f) - total_l1_via_fourier(e)));
    max_l2_gap =
        std::max(max_l2_gap, std::abs(total_l2(f) - total_l2_via_fourier(e)));
  }
  double max_collapse = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 9;
    auto g = rng::Stream::for_block(2001, rng::kStreamEnsemble,
                                    static_cast<std::uint64_t>(k));
    const CubeFunction f = oracle::random_boolean_function(n, g);
    const InfluenceProfile p = influence_profile(f);
    max_collapse = std::max(
        max_collapse,
        (p.per_coordinate_l1 - p.per_coordinate_l2).cwiseAbs().maxCoeff());
  }
  report(2, "influence route agreement and boolean collapse",
         max_l1_gap <= 1e-9 && max_l2_gap <= 1e-9 && max_collapse <= 1e-9,
         "200 route gaps: l1 %.3g, l2 %.3g; 100 sign tables: max |l1 - l2| "
         "%.3g",
         max_l1_gap, max_l2_gap, max_collapse);
}

// ---- 3: squared-influence degree bound ----------------------------------

void criterion_degree_bound() {
  int violations = 0;
  double worst_margin = -1e300;
  for (int k = 0; k < 1000; ++k) {
    const int n = 4 + k % 7;
    const int d = 1 + k % std::min(n, 5);
    const CubeFunction f = random_bounded_polynomial(
        n, d, rng::stream_seed(3000, static_cast<std::uint64_t>(k)));
    const FourierExpansion e = fourier_transform(f);
    const int deg = degree(e);
    const double lhs = total_l2_via_fourier(e);
    const double rhs = deg * norm(f, 2) * norm(f, 2);
    if (lhs > rhs + 1e-9) ++violations;
    worst_margin = std::max(worst_margin, lhs - rhs);
  }
  report(3, "squared-influence degree bound", violations == 0,
         "1000 instances; violations %d, worst lhs-rhs margin %.3g",
         violations, worst_margin);
}

// ---- 4: interpolation certificates --------------------------------------

void criterion_certificates() {
  double max_residual = 0, max_ratio = 0, anchor_gap = 0;
  bool coeff_cap_ok = true, product_ok = true;
  std::string error;
  try {
    for (int d = 1; d <= 64; ++d) {
      const GammaCertificate c = solve_certificate(d);
      max_residual = std::max(max_residual, c.residual_inf);
      for (int i = 0; i < d; ++i)
        if (std::abs(c.x[i]) > 1.0 / std::abs(c.gammas[i]) + 1e-8)
          coeff_cap_ok = false;
      if (c.l1_norm > c.harmonic_bound + 1e-8) product_ok = false;
      max_ratio = std::max(max_ratio, c.l1_norm / (d * std::log(d + 1.0)));
      if (d == 2) anchor_gap = std::abs(c.l1_norm - 2.0);
    }
  } catch (const std::exception& e) {
    error = e.what();
  }
  const bool pass = error.empty() && max_residual <= 1e-8 && coeff_cap_ok &&
                    product_ok && anchor_gap <= 1e-12 && max_ratio <= 2.5;
  if (error.empty())
    report(4, "interpolation certificates", pass,
           "d in [1,64]; max residual %.3g, per-coefficient cap %s, product "
           "inequality %s, d=2 weight-sum gap %.3g, max growth ratio %.4f",
           max_residual, coeff_cap_ok ? "held" : "broken",
           product_ok ? "held" : "broken", anchor_gap, max_ratio);
  else
    report(4, "interpolation certificates", false, "solver error: %s",
           error.c_str());
}

// ---- 5: growth envelope grid --------------------------------------------

void criterion_growth_grid() {
  double worst_excess = -1e300;
  int envelope_misses = 0;
  for (int d = 1; d <= 200; ++d) {
    for (int k = -1; k < 25; ++k) {
      const double gamma =
          k < 0 ? 0.0
                : std::pow(10.0, -4.0 + (std::log10(2.0) + 4.0) * k / 24.0);
      const double value = chebyshev_eval(d, 1.0 + gamma);
      const double bound = paturi_bound(d, gamma);
      const double excess = value - bound * (1.0 + 1e-9);
      worst_excess = std::max(worst_excess, excess);
      if (excess > 0) ++envelope_misses;
    }
  }
  int edge_misses = 0;
  double max_edge = 0;
  for (int d = 2; d <= 1000; ++d) {
    const GrowthCheck c = extremal_growth_check(d);
    max_edge = std::max(max_edge, c.value);
    if (!c.ok || c.value > 20.0) ++edge_misses;
  }
  const bool exact_anchor = chebyshev_eval(3, 2.0) == 26.0;
  report(5, "growth envelope grid",
         envelope_misses == 0 && edge_misses == 0 && exact_anchor,
         "200 x 26 envelope grid misses %d; edge values d in [2,1000] max "
         "%.4f, misses %d; integer anchor %s",
         envelope_misses, max_edge, edge_misses,
         exact_anchor ? "exact" : "off");
}

// ---- 6: inequality chain replay -----------------------------------------

void criterion_chain_replay() {
  double max_gap = 0;
  for (int k = 0; k < 200; ++k) {
    const int n = 4 + k % 7;
    auto g = rng::Stream::for_block(6000, rng::kStreamEnsemble,
                                    static_cast<std::uint64_t>(k));
    const CubeFunction f = oracle::random_function(n, g);
    const Mask s = g.fair_mask(n);
    const double alpha = g.uniform01();
    max_gap = std::max(max_gap, expected_shift_identity_gap(f, s, alpha));
  }

  auto layer = [](int n, int d, std::uint64_t seed) {
    auto g = rng::Stream::for_block(seed, rng::kStreamEnsemble, 0);
    Vec c = Vec::Zero(Index{1} << n);
    for (Index r = 0; r < c.size(); ++r)
      if (popcount(static_cast<Mask>(r)) == d) c[r] = g.uniform_pm1();
    return FourierExpansion(n, c);
  };
  const FourierExpansion hom = layer(10, 3, 61);
  const double hom_exact = oracle::exhaustive_b(hom, 1.0 / 3.0);
  const McEstimate hom_est =
      estimate_b_homogeneous(inverse_transform(hom), 3, 400000, 62);
  const double hom_z = std::abs(hom_est.mean - hom_exact) /
                       std::max(hom_est.std_error, 1e-300);

  auto low = [](int n, int d, std::uint64_t seed) {
    auto g = rng::Stream::for_block(seed, rng::kStreamEnsemble, 1);
    Vec c = Vec::Zero(Index{1} << n);
    for (Index r = 0; r < c.size(); ++r)
      if (popcount(static_cast<Mask>(r)) <= d) c[r] = g.uniform_pm1();
    return FourierExpansion(n, c);
  };
  const FourierExpansion gen = low(10, 3, 63);
  const double rho = 9.0 / 8.0;
  Vec weighted = gen.coeffs();
  for (Index r = 0; r < weighted.size(); ++r)
    weighted[r] *= std::pow(rho, popcount(static_cast<Mask>(r)));
  const double gen_exact =
      oracle::exhaustive_b(FourierExpansion(10, weighted), 1.0 / 9.0);
  const McEstimate gen_est = estimate_b_general(gen, 3, 400000, 64);
  const double gen_z = std::abs(gen_est.mean - gen_exact) /
                       std::max(gen_est.std_error, 1e-300);

  int contract_misses = 0;
  for (int k = 0; k < 50; ++k) {
    TraceOptions opts;
    opts.trials = 20000;
    opts.seed = static_cast<std::uint64_t>(7000 + k);
    const FourierExpansion e = layer(10, 3, opts.seed);
    const TraceReport rep = theorem_trace(inverse_transform(e), opts);
    if (!rep.homogeneous || !rep.lower_ok || !rep.upper_ok) ++contract_misses;
  }
  for (int k = 0; k < 50; ++k) {
    TraceOptions opts;
    opts.trials = 20000;
    opts.seed = static_cast<std::uint64_t>(7100 + k);
    const CubeFunction f = random_bounded_polynomial(10, 3, opts.seed);
    const TraceReport rep = theorem_trace(f, opts);
    if (rep.homogeneous || !rep.lower_ok || !rep.upper_ok) ++contract_misses;
  }

  report(6, "inequality chain replay",
         max_gap <= 1e-10 && hom_z <= 3.0 && gen_z <= 3.0 &&
             contract_misses == 0,
         "200 shift-identity gaps max %.3g; estimator z-scores %.2f "
         "(single-layer) %.2f (general) at n=10; contract misses %d of 100",
         max_gap, hom_z, gen_z, contract_misses);
}

// ---- 7: cut polynomial identity -----------------------------------------

void criterion_cut_identity() {
  double max_gap = 0;
  const double ps[] = {0.0, 0.31, 0.5, 0.77, 1.0};
  for (int k = 0; k < 500; ++k) {
    auto g = rng::Stream::for_block(8000, rng::kStreamEnsemble,
                                    static_cast<std::uint64_t>(k));
    const Graph graph = er_graph(12, 0.2 + 0.06 * (k % 11), g.next_u64());
    const double p = ps[k % 5];
    const Mask s = g.fair_mask(12);
    max_gap = std::max(max_gap, evaluate_cut_identity(graph, p, s));
  }
  const CutSearchResult c4 =
      exhaustive_cut_deviation(cycle_graph(4), 2.0 / 3.0);
  const double anchor_gap = std::abs(c4.deviation - 4.0 / 3.0);
  report(7, "cut polynomial identity",
         max_gap <= 1e-9 && anchor_gap <= 1e-14,
         "500 triples max gap %.3g; 4-cycle anchor deviation off by %.3g",
         max_gap, anchor_gap);
}

// ---- 8: cut deviation scaling and one-sided failure ---------------------

void criterion_deviation_scaling() {
  double min_margin = 1e300;
  bool two_sided_ok = true;
  for (const int n : {16, 18, 20, 22}) {
    for (int s = 0; s < 5; ++s) {
      const Graph g = er_graph(
          n, 0.5,
          rng::stream_seed(0, (static_cast<std::uint64_t>(n) << 8) | s));
      const double p = g.density();
      const double dev = exhaustive_cut_deviation(g, p).deviation;
      const double floor_val =
          0.05 * std::min(p, 1.0 - p) * std::pow(n, 1.5);
      min_margin = std::min(min_margin, dev / floor_val);
      if (dev < floor_val) two_sided_ok = false;
    }
  }
  bool one_sided_ok = true;
  double max_surplus_over_n = 0;
  for (int n = 8; n <= 24; n += 2) {
    const Graph g = bipartite_complement(n);
    const double surplus =
        exhaustive_cut_surplus(g, g.density()).deviation;
    max_surplus_over_n = std::max(max_surplus_over_n, surplus / n);
    if (surplus > 2.0 * n + 1e-9) one_sided_ok = false;
  }
  report(8, "cut deviation scaling and one-sided failure",
         two_sided_ok && one_sided_ok,
         "20 random graphs: min deviation over floor %.2f; two-clique "
         "surplus max %.3f x n (cap 2n)",
         min_margin, max_surplus_over_n);
}

// ---- 9: influence separation slope --------------------------------------

void criterion_separation_slope() {
  std::vector<double> ln_n, ln_ratio, ln_index;
  for (int n = 12; n <= 22; n += 2) {
    double ratio_mean = 0, index_mean = 0;
    int used = 0;
    for (int s = 0; s < 5; ++s) {
      const Graph g = er_graph(
          n, 0.5,
          rng::stream_seed(0, (static_cast<std::uint64_t>(n) << 16) | s));
      const double p = g.density();
      const double dev = exhaustive_cut_deviation(g, p).deviation;
      if (dev <= 0) continue;
      const CutInfluence ci = cut_polynomial_influence(g, p);
      const double l1h = ci.total_l1 / dev;
      const double l2h = ci.total_l2 / (dev * dev);
      ratio_mean += l1h / l2h;
      index_mean += l1h / std::sqrt(l2h);
      ++used;
    }
    ln_n.push_back(std::log(static_cast<double>(n)));
    ln_ratio.push_back(std::log(ratio_mean / used));
    ln_index.push_back(std::log(index_mean / used));
  }
  auto slope = [](const std::vector<double>& xs,
                  const std::vector<double>& ys) {
    const double k = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
  };
  const double slope_ratio = slope(ln_n, ln_ratio);
  const double slope_index = slope(ln_n, ln_index);
  report(9, "influence separation slope",
         slope_index >= 0.35 && slope_index <= 0.65,
         "n in {12..22}, 5 graphs each; separation-index slope %.3f "
         "(target 0.5 +- 0.15), raw l1/l2 ratio slope %.3f reported "
         "alongside",
         slope_index, slope_ratio);
}

// ---- 10: byte-identical seeded runs -------------------------------------

struct RunOutput {
  int code = -1;
  std::string text;
};

std::string g_exe;
int g_run_id = 0;

RunOutput run_cli(const std::string& args) {
  std::filesystem::create_directories("acceptance_tmp");
  const std::string path =
      "acceptance_tmp/out" + std::to_string(g_run_id++);
  const std::string cmd =
      "\"" + g_exe + "\" " + args + " >" + path + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunOutput r;
  if (status >= 0 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.text = buf.str();
  return r;
}

void criterion_determinism() {
  if (g_exe.empty()) {
    report(10, "byte-identical seeded runs", false,
           "no binary path supplied on the command line");
    return;
  }
  std::filesystem::create_directories("acceptance_tmp");
  {
    const CubeFunction f = random_bounded_polynomial(8, 3, 77);
    std::ofstream out("acceptance_tmp/p.json");
    write_function_json(out, f);
  }
  const std::vector<std::string> commands = {
      "--seed 5 %T noise --rho 0.5 --samples 50000",
      "--seed 5 %T trace --in acceptance_tmp/p.json --trials 20000",
      "--seed 5 %T cutdev --family er --n 40 --pedge 0.5 --restarts 24",
      "--seed 5 %T verify-theorem --n 8 --d 3 --instances 20",
      "--seed 5 %T separation --nmin 12 --nmax 16 --seeds-per-n 2",
      "--seed 5 %T certificate --dmax 32",
      "--seed 5 %T chebyshev --dmax 200",
      "--seed 5 %T influence --in acceptance_tmp/p.json --fourier",
  };
  int mismatches = 0, bad_exits = 0;
  for (const std::string& tmpl : commands) {
    std::string reference;
    bool first = true;
    for (const char* threads : {"--threads 1", "--threads 4"}) {
      std::string cmd = tmpl;
      cmd.replace(cmd.find("%T"), 2, threads);
      for (int rep = 0; rep < 2; ++rep) {
        const RunOutput r = run_cli(cmd);
        if (r.code != 0) ++bad_exits;
        if (first) {
          reference = r.text;
          first = false;
        } else if (r.text != reference) {
          ++mismatches;
        }
      }
    }
  }
  report(10, "byte-identical seeded runs", mismatches == 0 && bad_exits == 0,
         "8 seeded commands x 2 runs x threads {1,4}: %d mismatches, %d "
         "nonzero exits",
         mismatches, bad_exits);
}

// ---- 11: sweep performance ----------------------------------------------

void criterion_performance() {
  const Graph g = er_graph(24, 0.5, 7);
  const double p = g.density();

  const auto t0 = std::chrono::steady_clock::now();
  const CutSearchResult sweep = exhaustive_cut_deviation(g, p);
  const auto t1 = std::chrono::steady_clock::now();
  Mask naive_mask = 0;
  const double naive = oracle::naive_cut_deviation(g, p, &naive_mask);
  const auto t2 = std::chrono::steady_clock::now();

  const double sweep_s = std::chrono::duration<double>(t1 - t0).count();
  const double naive_s = std::chrono::duration<double>(t2 - t1).count();
  const bool agree = std::abs(sweep.deviation - naive) <= 1e-9 &&
                     sweep.best_mask == naive_mask;
  const bool pass =
      agree && sweep_s <= 60.0 && naive_s >= 20.0 * sweep_s;
  report(11, "sweep performance", pass,
         "n=24 sweep %.2fs (cap 60s), quadratic rescan %.1fs, speedup "
         "%.0fx (floor 20x), results %s",
         sweep_s, naive_s, naive_s / std::max(sweep_s, 1e-9),
         agree ? "identical" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_exe = argv[1];
  par::set_thread_count(1);

  criterion_transforms();
  criterion_influence_routes();
  criterion_degree_bound();
  criterion_certificates();
  criterion_growth_grid();
  criterion_chain_replay();
  criterion_cut_identity();
  criterion_deviation_scaling();
  criterion_separation_slope();
  criterion_determinism();
  criterion_performance();

  std::printf("%d of 11 criteria passed\n", 11 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
