#include "hcube/certificate.hpp"
#include "hcube/chebyshev.hpp"
#include "hcube/cube.hpp"
#include "hcube/graphs.hpp"
#include "hcube/influence.hpp"
#include "hcube/io.hpp"
#include "hcube/noise.hpp"
#include "hcube/prooftrace.hpp"
#include "hcube/rng.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace hcube;

struct Global {
  std::uint64_t seed = 0;
  int threads = 0;
  double tol = 1e-9;
  std::string out;
  std::string format;  // empty = subcommand default
};

std::ostream& open_output(const Global& g, std::ofstream& file) {
  if (g.out.empty()) return std::cout;
  file.open(g.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open --out file " + g.out);
  return file;
}

std::string pick_format(const Global& g, const std::string& fallback) {
  if (g.format.empty()) return fallback;
  if (g.format != "csv" && g.format != "json")
    throw std::runtime_error("--format must be csv or json");
  return g.format;
}

int finish(const std::vector<std::string>& violations) {
  if (violations.empty()) return 0;
  for (const auto& v : violations) std::cerr << "violation: " << v << '\n';
  return 2;
}

void provenance(JsonWriter& w, const Global& g, const std::string& command) {
  w.key("provenance").begin_object();
  w.key("version").value(std::string(kVersion));
  w.key("command").value(command);
  w.key("seed").value(g.seed);
  w.end_object();
}

CubeFunction builtin_majority3() {
  Vec v(8);
  v << 1, 1, 1, -1, 1, -1, -1, -1;
  return CubeFunction(3, v);
}

// ---- fourier ----------------------------------------------------------

int run_fourier(const Global& g, const std::string& in_path, bool inverse) {
  std::ofstream file;
  std::ostream& out = open_output(g, file);
  const std::string fmt = pick_format(g, "json");
  if (inverse) {
    const FourierExpansion e = read_expansion_file(in_path);
    const CubeFunction f = inverse_transform(e);
    if (fmt == "json") {
      write_function_json(out, f);
    } else {
      out << "index,value\n";
      for (Index i = 0; i < f.size(); ++i)
        out << i << ',' << format_double(f.values()[i]) << '\n';
    }
  } else {
    const CubeFunction f = read_function_file(in_path);
    const FourierExpansion e = fourier_transform(f);
    if (fmt == "json") {
      write_expansion_json(out, e);
    } else {
      out << "mask,value\n";
      for (Index s = 0; s < e.size(); ++s)
        if (e.coeffs()[s] != 0.0)
          out << s << ',' << format_double(e.coeffs()[s]) << '\n';
    }
  }
  return 0;
}

// ---- influence --------------------------------------------------------

int run_influence(const Global& g, const std::string& in_path,
                  bool fourier_check) {
  const CubeFunction f = read_function_file(in_path);
  const InfluenceProfile p = influence_profile(f);
  std::vector<std::string> violations;
  double fl1 = 0, fl2 = 0;
  if (fourier_check) {
    const FourierExpansion e = fourier_transform(f);
    fl1 = total_l1_via_fourier(e);
    fl2 = total_l2_via_fourier(e);
    const double tol = std::max(g.tol, 1e-9);
    if (std::abs(fl1 - p.total_l1) > tol)
      violations.push_back("total_l1 disagrees with the coefficient route");
    if (std::abs(fl2 - p.total_l2) > tol)
      violations.push_back("total_l2 disagrees with the coefficient route");
  }

  std::ofstream file;
  std::ostream& out = open_output(g, file);
  const std::string fmt = pick_format(g, "csv");
  if (fmt == "csv") {
    out << "coordinate,l1,l2\n";
    for (int i = 0; i < f.n(); ++i)
      out << i + 1 << ',' << format_double(p.per_coordinate_l1[i]) << ','
          << format_double(p.per_coordinate_l2[i]) << '\n';
    out << "total," << format_double(p.total_l1) << ','
        << format_double(p.total_l2) << '\n';
  } else {
    JsonWriter w(out);
    w.begin_object();
    provenance(w, g, "influence");
    w.key("n").value(f.n());
    w.key("per_coordinate").begin_array();
    for (int i = 0; i < f.n(); ++i) {
      w.begin_object();
      w.key("coordinate").value(i + 1);
      w.key("l1").value(p.per_coordinate_l1[i]);
      w.key("l2").value(p.per_coordinate_l2[i]);
      w.end_object();
    }
    w.end_array();
    w.key("total_l1").value(p.total_l1);
    w.key("total_l2").value(p.total_l2);
    if (fourier_check) {
      w.key("total_l1_fourier").value(fl1);
      w.key("total_l2_fourier").value(fl2);
    }
    w.end_object();
    out << '\n';
  }
  return finish(violations);
}

// ---- noise ------------------------------------------------------------

int run_noise(const Global& g, const std::string& in_path, double rho,
              std::uint64_t x_index, std::int64_t samples) {
  const CubeFunction f =
      in_path.empty() ? builtin_majority3() : read_function_file(in_path);
  if (x_index >> f.n())
    throw std::runtime_error("--x outside the cube for this input");
  const NoiseCheck c =
      noise_mc_check(f, rho, CubePoint{x_index, f.n()}, samples, g.seed);
  std::vector<std::string> violations;
  if (!(std::abs(c.z_score) <= 4.0))
    violations.push_back("Monte Carlo z-score above 4");

  std::ofstream file;
  std::ostream& out = open_output(g, file);
  const std::string fmt = pick_format(g, "json");
  if (fmt == "json") {
    JsonWriter w(out);
    w.begin_object();
    provenance(w, g, "noise");
    w.key("rho").value(rho);
    w.key("x").value(x_index);
    w.key("samples").value(c.samples);
    w.key("mc_estimate").value(c.mc_estimate);
    w.key("fourier_value").value(c.fourier_value);
    w.key("std_error").value(c.std_error);
    w.key("z_score").value(c.z_score);
    w.key("ok").value(violations.empty());
    w.end_object();
    out << '\n';
  } else {
    out << "field,value\n";
    out << "rho," << format_double(rho) << '\n';
    out << "x," << x_index << '\n';
    out << "samples," << c.samples << '\n';
    out << "mc_estimate," << format_double(c.mc_estimate) << '\n';
    out << "fourier_value," << format_double(c.fourier_value) << '\n';
    out << "std_error," << format_double(c.std_error) << '\n';
    out << "z_score," << format_double(c.z_score) << '\n';
    out << "ok," << (violations.empty() ? "true" : "false") << '\n';
  }
  return finish(violations);
}

// ---- certificate ------------------------------------------------------

int run_certificate(const Global& g, int dmax) {
  std::vector<std::string> violations;
  std::vector<CertificateGrowthRow> rows;
  try {
    rows = certificate_growth_table(dmax);
  } catch (const std::runtime_error& e) {
    violations.push_back(e.what());
    return finish(violations);
  }
  for (const auto& r : rows)
    if (r.d <= 64 && r.residual_inf > 1e-8)
      violations.push_back("residual above 1e-8 at d = " + std::to_string(r.d));

  std::ofstream file;
  std::ostream& out = open_output(g, file);
  const std::string fmt = pick_format(g, "csv");
  if (fmt == "csv") {
    out << "d,residual,l1_norm,harmonic_bound,ratio\n";
    for (const auto& r : rows)
      out << r.d << ',' << format_double(r.residual_inf) << ','
          << format_double(r.l1_norm) << ','
          << format_double(r.harmonic_bound) << ','
          << format_double(r.ratio) << '\n';
  } else {
    JsonWriter w(out);
    w.begin_object();
    provenance(w, g, "certificate");
    w.key("d_max").value(dmax);
    w.key("rows").begin_array();
    for (const auto& r : rows) {
      w.begin_object();
      w.key("d").value(r.d);
      w.key("residual").value(r.residual_inf);
      w.key("l1_norm").value(r.l1_norm);
      w.key("harmonic_bound").value(r.harmonic_bound);
      w.key("ratio").value(r.ratio);
      w.end_object();
    }
    w.end_array();
    w.end_object();
    out << '\n';
  }
  return finish(violations);
}

// ---- chebyshev --------------------------------------------------------

int run_chebyshev(const Global& g, int dmax) {
  if (dmax < 2) throw std::runtime_error("--dmax must be >= 2");
  std::vector<std::string> violations;
  std::vector<GrowthCheck> rows;
  rows.reserve(static_cast<std::size_t>(dmax - 1));
  for (int d = 2; d <= dmax; ++d) {
    rows.push_back(extremal_growth_check(d));
    const auto& r = rows.back();
    if (!r.ok)
      violations.push_back("growth envelope fails at d = " + std::to_string(d));
    if (r.value > 20.0)
      violations.push_back("edge value above 20 at d = " + std::to_string(d));
  }

  std::ofstream file;
  std::ostream& out = open_output(g, file);
  const std::string fmt = pick_format(g, "csv");
  if (fmt == "csv") {
    out << "d,value,bound,ok\n";
    for (const auto& r : rows)
      out << r.d << ',' << format_double(r.value) << ','
          << format_double(r.bound) << ',' << (r.ok ? "true" : "false")
          << '\n';
  } else {
    JsonWriter w(out);
    w.begin_object();
    provenance(w, g, "chebyshev");
    w.key("d_max").value(dmax);
    w.key("rows").begin_array();
    for (const auto& r : rows) {
      w.begin_object();
      w.key("d").value(r.d);
      w.key("value").value(r.value);
      w.key("bound").value(r.bound);
      w.key("ok").value(r.ok);
      w.end_object();
    }
    w.end_array();
    w.end_object();
    out << '\n';
  }
  return finish(violations);
}

// ---- trace ------------------------------------------------------------

int run_trace(const Global& g, const std::string& in_path, bool homogeneous,
              std::int64_t trials, int qs_samples) {
  const CubeFunction f = read_function_file(in_path);
  TraceOptions opts;
  opts.trials = trials;
  opts.qs_samples = qs_samples;
  opts.seed = g.seed;
  opts.mode = homogeneous ? 1 : 0;
  const TraceReport r = theorem_trace(f, opts);
  std::vector<std::string> violations;
  if (!r.degenerate_low_degree) {
    if (!r.lower_ok) violations.push_back("B below 0.1 of the influence rate");
    if (!r.upper_ok) violations.push_back("B above 100 x width d ln(d+2)");
  }

  std::ofstream file;
  std::ostream& out = open_output(g, file);
  const std::string fmt = pick_format(g, "json");
  if (fmt == "json") {
    JsonWriter w(out);
    w.begin_object();
    provenance(w, g, "trace");
    w.key("trials").value(trials);
    w.key("qs_samples").value(qs_samples);
    w.key("d").value(r.d);
    w.key("n").value(r.n);
    w.key("homogeneous").value(r.homogeneous);
    w.key("degenerate_low_degree").value(r.degenerate_low_degree);
    w.key("inf_total").value(r.inf_total);
    w.key("range_width").value(r.range_width);
    w.key("b_estimate").value(r.b_estimate);
    w.key("b_std_error").value(r.b_std_error);
    w.key("qs_max").value(r.qs_max);
    w.key("bound_dlogd").value(r.bound_dlogd);
    w.key("ratio_b_lower").value(r.ratio_b_lower);
    w.key("ratio_qs").value(r.ratio_qs);
    w.key("lower_ok").value(r.lower_ok);
    w.key("upper_ok").value(r.upper_ok);
    w.end_object();
    out << '\n';
  } else {
    out << "field,value\n";
    out << "d," << r.d << '\n';
    out << "n," << r.n << '\n';
    out << "homogeneous," << (r.homogeneous ? "true" : "false") << '\n';
    out << "degenerate_low_degree,"
        << (r.degenerate_low_degree ? "true" : "false") << '\n';
    out << "inf_total," << format_double(r.inf_total) << '\n';
    out << "range_width," << format_double(r.range_width) << '\n';
    out << "b_estimate," << format_double(r.b_estimate) << '\n';
    out << "b_std_error," << format_double(r.b_std_error) << '\n';
    out << "qs_max," << format_double(r.qs_max) << '\n';
    out << "bound_dlogd," << format_double(r.bound_dlogd) << '\n';
    out << "ratio_b_lower," << format_double(r.ratio_b_lower) << '\n';
    out << "ratio_qs," << format_double(r.ratio_qs) << '\n';
    out << "lower_ok," << (r.lower_ok ? "true" : "false") << '\n';
    out << "upper_ok," << (r.upper_ok ? "true" : "false") << '\n';
  }
  return finish(violations);
}

// ---- cutdev -----------------------------------------------------------

int run_cutdev(const Global& g, const std::string& graph_path,
               const std::string& family, int n, double pedge,
               const std::string& p_spec, bool force_exhaustive,
               int restarts, bool one_sided) {
  Graph graph(0);
  std::string source;
  if (!graph_path.empty()) {
    graph = read_graph_file(graph_path);
    source = "file:" + graph_path;
  } else if (family == "er") {
    graph = er_graph(n, pedge, g.seed);
    source = "er";
  } else if (family == "cycle") {
    graph = cycle_graph(n);
    source = "cycle";
  } else if (family == "clique") {
    graph = clique_graph(n);
    source = "clique";
  } else if (family == "bipartite-complement") {
    graph = bipartite_complement(n);
    source = "bipartite-complement";
  } else {
    throw std::runtime_error(
        "need --graph FILE or --family er|cycle|clique|bipartite-complement");
  }

  double p;
  if (p_spec == "auto") {
    p = graph.density();
  } else {
    try {
      std::size_t pos = 0;
      p = std::stod(p_spec, &pos);
      if (pos != p_spec.size()) throw std::invalid_argument(p_spec);
    } catch (const std::exception&) {
      throw std::runtime_error("--p must be a real in [0,1] or auto");
    }
  }
  if (!(p >= 0.0 && p <= 1.0))
    throw std::runtime_error("--p must be a real in [0,1] or auto");

  const bool exhaustive =
      force_exhaustive || (restarts <= 0 && graph.n() <= 24);
  if (force_exhaustive && graph.n() > 24)
    throw std::runtime_error("--exhaustive needs n <= 24");
  CutSearchResult r;
  std::string mode;
  if (exhaustive) {
    r = one_sided ? exhaustive_cut_surplus(graph, p)
                  : exhaustive_cut_deviation(graph, p);
    mode = one_sided ? "exhaustive-one-sided" : "exhaustive";
  } else {
    if (one_sided)
      throw std::runtime_error("--one-sided needs the exhaustive search");
    const int k = restarts > 0 ? restarts : 32;
    r = heuristic_cut_deviation(graph, p, k, g.seed);
    mode = "heuristic";
  }

  std::vector<std::string> violations;
  const double signed_dev = static_cast<double>(r.cut_value) - r.expected;
  const double check = one_sided ? signed_dev : std::abs(signed_dev);
  if (std::abs(check - r.deviation) > 1e-9)
    violations.push_back("deviation does not match its own cut and expectation");

  std::ofstream file;
  std::ostream& out = open_output(g, file);
  const std::string fmt = pick_format(g, "json");
  if (fmt == "json") {
    JsonWriter w(out);
    w.begin_object();
    provenance(w, g, "cutdev");
    w.key("source").value(source);
    w.key("n").value(graph.n());
    w.key("edges").value(graph.edge_count());
    w.key("p").value(p);
    w.key("mode").value(mode);
    w.key("best_set").begin_array();
    for (const int v : r.best_set) w.value(v + 1);
    w.end_array();
    if (graph.n() <= 63) w.key("best_mask").value(r.best_mask);
    w.key("cut_value").value(r.cut_value);
    w.key("expected").value(r.expected);
    w.key("deviation").value(r.deviation);
    w.key("exhaustive").value(r.exhaustive);
    w.key("cuts_examined").value(r.cuts_examined);
    w.end_object();
    out << '\n';
  } else {
    out << "field,value\n";
    out << "source," << source << '\n';
    out << "n," << graph.n() << '\n';
    out << "edges," << graph.edge_count() << '\n';
    out << "p," << format_double(p) << '\n';
    out << "mode," << mode << '\n';
    out << "best_set,";
    for (std::size_t i = 0; i < r.best_set.size(); ++i)
      out << (i ? " " : "") << r.best_set[i] + 1;
    out << '\n';
    out << "cut_value," << r.cut_value << '\n';
    out << "expected," << format_double(r.expected) << '\n';
    out << "deviation," << format_double(r.deviation) << '\n';
    out << "exhaustive," << (r.exhaustive ? "true" : "false") << '\n';
    out << "cuts_examined," << r.cuts_examined << '\n';
  }
  return finish(violations);
}

// ---- verify-theorem ---------------------------------------------------

int run_verify(const Global& g, int n, int d, int instances) {
  if (instances < 1) throw std::runtime_error("--instances must be >= 1");
  if (d < 0 || d > n) throw std::runtime_error("need 0 <= d <= n");
  const double slack = std::max(g.tol, 1e-9);
  std::vector<std::string> violations;
  int fact_violations = 0, bound_violations = 0;
  double max_inf_over_a = 0, max_inf_over_ad = 0, max_inf_over_ad3 = 0;
  for (int k = 0; k < instances; ++k) {
    const CubeFunction f = random_bounded_polynomial(
        n, d, rng::stream_seed(g.seed, (rng::kStreamScan << 24) + k));
    const FourierExpansion e = fourier_transform(f);
    const int deg = degree(e);
    const double a = range_width(f);
    const double inf1 = total_l1(f);
    const double inf2 = total_l2_via_fourier(e);
    const double l2 = norm(f, 2);
    if (inf2 > deg * l2 * l2 + slack) ++fact_violations;
    const double cap = 100.0 * a * deg * deg * deg * std::log(deg + 2.0);
    if (inf1 > cap + slack) ++bound_violations;
    if (a > 0) {
      max_inf_over_a = std::max(max_inf_over_a, inf1 / a);
      if (deg >= 1) {
        max_inf_over_ad = std::max(max_inf_over_ad, inf1 / (a * deg));
        max_inf_over_ad3 = std::max(
            max_inf_over_ad3,
            inf1 / (a * deg * deg * deg * std::log(deg + 2.0)));
      }
    }
  }
  if (fact_violations)
    violations.push_back(std::to_string(fact_violations) +
                         " instances broke the degree x squared-norm bound");
  if (bound_violations)
    violations.push_back(std::to_string(bound_violations) +
                         " instances broke the d^3 log envelope");

  std::ofstream file;
  std::ostream& out = open_output(g, file);
  const std::string fmt = pick_format(g, "json");
  if (fmt == "json") {
    JsonWriter w(out);
    w.begin_object();
    provenance(w, g, "verify-theorem");
    w.key("n").value(n);
    w.key("d").value(d);
    w.key("instances").value(instances);
    w.key("fact_violations").value(fact_violations);
    w.key("bound_violations").value(bound_violations);
    w.key("max_inf_over_width").value(max_inf_over_a);
    w.key("max_inf_over_width_d").value(max_inf_over_ad);
    w.key("max_inf_over_width_d3log").value(max_inf_over_ad3);
    w.end_object();
    out << '\n';
  } else {
    out << "field,value\n";
    out << "n," << n << '\n';
    out << "d," << d << '\n';
    out << "instances," << instances << '\n';
    out << "fact_violations," << fact_violations << '\n';
    out << "bound_violations," << bound_violations << '\n';
    out << "max_inf_over_width," << format_double(max_inf_over_a) << '\n';
    out << "max_inf_over_width_d," << format_double(max_inf_over_ad) << '\n';
    out << "max_inf_over_width_d3log," << format_double(max_inf_over_ad3)
        << '\n';
  }
  return finish(violations);
}

// ---- separation -------------------------------------------------------

struct SeparationRow {
  int n = 0;
  double deviation_mean = 0;
  double ratio_mean = 0;   // l1(h) / l2(h)
  double index_mean = 0;   // l1(h) / sqrt(l2(h))
};

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t k = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

int run_separation(const Global& g, int nmin, int nmax, int seeds_per_n) {
  if (nmin < 4 || nmax > 24 || nmin > nmax)
    throw std::runtime_error("need 4 <= nmin <= nmax <= 24");
  if (seeds_per_n < 1) throw std::runtime_error("--seeds-per-n must be >= 1");
  if (nmin % 2) ++nmin;

  std::vector<SeparationRow> rows;
  for (int n = nmin; n <= nmax; n += 2) {
    SeparationRow row;
    row.n = n;
    int used = 0;
    for (int s = 0; s < seeds_per_n; ++s) {
      const Graph graph = er_graph(
          n, 0.5,
          rng::stream_seed(g.seed, (static_cast<std::uint64_t>(n) << 16) | s));
      const double p = graph.density();
      const double dev = exhaustive_cut_deviation(graph, p).deviation;
      if (dev <= 0) continue;
      const CutInfluence ci = cut_polynomial_influence(graph, p);
      const double l1h = ci.total_l1 / dev;
      const double l2h = ci.total_l2 / (dev * dev);
      row.deviation_mean += dev;
      row.ratio_mean += l1h / l2h;
      row.index_mean += l1h / std::sqrt(l2h);
      ++used;
    }
    if (used == 0)
      throw std::runtime_error("no usable instance at n = " +
                               std::to_string(n));
    row.deviation_mean /= used;
    row.ratio_mean /= used;
    row.index_mean /= used;
    rows.push_back(row);
  }
  if (rows.size() < 2)
    throw std::runtime_error("need at least two grid points for a slope");

  std::vector<double> ln_n, ln_ratio, ln_index;
  for (const auto& r : rows) {
    ln_n.push_back(std::log(static_cast<double>(r.n)));
    ln_ratio.push_back(std::log(r.ratio_mean));
    ln_index.push_back(std::log(r.index_mean));
  }
  const double slope_ratio = fit_slope(ln_n, ln_ratio);
  const double slope_index = fit_slope(ln_n, ln_index);
  const bool ok = slope_index >= 0.35 && slope_index <= 0.65;
  std::vector<std::string> violations;
  if (!ok)
    violations.push_back("separation-index slope " +
                         format_double(slope_index) +
                         " outside [0.35, 0.65]");

  std::ofstream file;
  std::ostream& out = open_output(g, file);
  const std::string fmt = pick_format(g, "json");
  if (fmt == "json") {
    JsonWriter w(out);
    w.begin_object();
    provenance(w, g, "separation");
    w.key("nmin").value(nmin);
    w.key("nmax").value(nmax);
    w.key("seeds_per_n").value(seeds_per_n);
    w.key("rows").begin_array();
    for (const auto& r : rows) {
      w.begin_object();
      w.key("n").value(r.n);
      w.key("deviation_mean").value(r.deviation_mean);
      w.key("influence_ratio_mean").value(r.ratio_mean);
      w.key("separation_index_mean").value(r.index_mean);
      w.end_object();
    }
    w.end_array();
    w.key("slope_influence_ratio").value(slope_ratio);
    w.key("slope_separation_index").value(slope_index);
    w.key("ok").value(ok);
    w.end_object();
    out << '\n';
  } else {
    out << "n,deviation_mean,influence_ratio_mean,separation_index_mean\n";
    for (const auto& r : rows)
      out << r.n << ',' << format_double(r.deviation_mean) << ','
          << format_double(r.ratio_mean) << ','
          << format_double(r.index_mean) << '\n';
    out << "slope_influence_ratio," << format_double(slope_ratio) << ",,\n";
    out << "slope_separation_index," << format_double(slope_index) << ",,\n";
    out << "ok," << (ok ? "true" : "false") << ",,\n";
  }
  return finish(violations);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean-cube analysis toolkit"};
  app.require_subcommand(1);

  Global g;
  app.add_option("--seed", g.seed, "master seed for all randomized work");
  app.add_option("--threads", g.threads, "worker threads (0 = hardware)");
  app.add_option("--tol", g.tol, "extra tolerance for cross-checks");
  app.add_option("--out", g.out, "output path (default stdout)");
  app.add_option("--format", g.format, "csv or json");

  auto* cmd_fourier =
      app.add_subcommand("fourier", "transform a value table, or back");
  std::string fourier_in;
  bool fourier_inverse = false;
  cmd_fourier->add_option("--in", fourier_in, "input JSON document")
      ->required();
  cmd_fourier->add_flag("--inverse", fourier_inverse,
                        "input holds coefficients; synthesize values");

  auto* cmd_influence =
      app.add_subcommand("influence", "per-coordinate and total influences");
  std::string influence_in;
  bool influence_fourier = false;
  cmd_influence->add_option("--in", influence_in, "input function JSON")
      ->required();
  cmd_influence->add_flag("--fourier", influence_fourier,
                          "cross-check totals through the coefficient side");

  auto* cmd_noise =
      app.add_subcommand("noise", "smoothing operator Monte Carlo check");
  std::string noise_in;
  double noise_rho = 0.5;
  std::uint64_t noise_x = 0;
  std::int64_t noise_samples = 100000;
  cmd_noise->add_option("--in", noise_in,
                        "input function JSON (default: 3-bit majority)");
  cmd_noise->add_option("--rho", noise_rho, "correlation in [-1, 1]")
      ->required();
  cmd_noise->add_option("--x", noise_x, "base point index");
  cmd_noise->add_option("--samples", noise_samples, "Monte Carlo samples");

  auto* cmd_certificate =
      app.add_subcommand("certificate", "interpolation certificates by degree");
  int certificate_dmax = 8;
  cmd_certificate->add_option("--dmax", certificate_dmax, "largest degree");

  auto* cmd_chebyshev =
      app.add_subcommand("chebyshev", "edge growth against the envelope");
  int chebyshev_dmax = 64;
  cmd_chebyshev->add_option("--dmax", chebyshev_dmax, "largest degree");

  auto* cmd_trace =
      app.add_subcommand("trace", "inequality-chain replay on one function");
  std::string trace_in;
  bool trace_hom = false;
  std::int64_t trace_trials = 20000;
  int trace_qs = 64;
  cmd_trace->add_option("--in", trace_in, "input function JSON")->required();
  cmd_trace->add_flag("--homogeneous", trace_hom,
                      "require the single-layer estimator");
  cmd_trace->add_option("--trials", trace_trials, "Monte Carlo trials");
  cmd_trace->add_option("--qs-samples", trace_qs, "sampled selector sets");

  auto* cmd_cutdev =
      app.add_subcommand("cutdev", "cut deviation search on a graph");
  std::string cutdev_graph, cutdev_family, cutdev_p = "auto";
  int cutdev_n = 0, cutdev_restarts = 0;
  double cutdev_pedge = 0.5;
  bool cutdev_exhaustive = false, cutdev_one_sided = false;
  cmd_cutdev->add_option("--graph", cutdev_graph, "graph file");
  cmd_cutdev->add_option("--family", cutdev_family,
                         "er|cycle|clique|bipartite-complement");
  cmd_cutdev->add_option("--n", cutdev_n, "vertices for --family");
  cmd_cutdev->add_option("--pedge", cutdev_pedge,
                         "edge probability for --family er");
  cmd_cutdev->add_option("--p", cutdev_p, "target rate, or auto = density");
  cmd_cutdev->add_flag("--exhaustive", cutdev_exhaustive,
                       "force the exact sweep (n <= 24)");
  cmd_cutdev->add_option("--restarts", cutdev_restarts,
                         "force hill climbing with this many restarts");
  cmd_cutdev->add_flag("--one-sided", cutdev_one_sided,
                       "maximize the signed surplus instead of |deviation|");

  auto* cmd_verify = app.add_subcommand(
      "verify-theorem", "influence bound scan over a random ensemble");
  int verify_n = 10, verify_d = 3, verify_instances = 100;
  cmd_verify->add_option("--n", verify_n, "dimension");
  cmd_verify->add_option("--d", verify_d, "degree cap");
  cmd_verify->add_option("--instances", verify_instances, "ensemble size");

  auto* cmd_separation = app.add_subcommand(
      "separation", "influence-ratio growth for normalized cut polynomials");
  int sep_nmin = 12, sep_nmax = 22, sep_seeds = 5;
  cmd_separation->add_option("--nmin", sep_nmin, "smallest n (even)");
  cmd_separation->add_option("--nmax", sep_nmax, "largest n");
  cmd_separation->add_option("--seeds-per-n", sep_seeds, "graphs per n");

  for (CLI::App* sub : {cmd_fourier, cmd_influence, cmd_noise,
                        cmd_certificate, cmd_chebyshev, cmd_trace, cmd_cutdev,
                        cmd_verify, cmd_separation})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  par::set_thread_count(g.threads);

  try {
    if (*cmd_fourier) return run_fourier(g, fourier_in, fourier_inverse);
    if (*cmd_influence)
      return run_influence(g, influence_in, influence_fourier);
    if (*cmd_noise)
      return run_noise(g, noise_in, noise_rho, noise_x, noise_samples);
    if (*cmd_certificate) return run_certificate(g, certificate_dmax);
    if (*cmd_chebyshev) return run_chebyshev(g, chebyshev_dmax);
    if (*cmd_trace)
      return run_trace(g, trace_in, trace_hom, trace_trials, trace_qs);
    if (*cmd_cutdev)
      return run_cutdev(g, cutdev_graph, cutdev_family, cutdev_n,
                        cutdev_pedge, cutdev_p, cutdev_exhaustive,
                        cutdev_restarts, cutdev_one_sided);
    if (*cmd_verify) return run_verify(g, verify_n, verify_d, verify_instances);
    if (*cmd_separation)
      return run_separation(g, sep_nmin, sep_nmax, sep_seeds);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
