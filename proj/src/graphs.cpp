#include "hcube/graphs.hpp"

#include "hcube/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hcube {

Graph::Graph(int n) : n_(n) {
  if (n < 0 || n > 1 << 20) throw std::invalid_argument("Graph: bad n");
  words_ = (n + 63) / 64;
  adj_.assign(static_cast<std::size_t>(n) * words_, 0);
  degree_.assign(static_cast<std::size_t>(std::max(n, 1)), 0);
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw std::invalid_argument("add_edge: vertex out of range");
  if (u == v) throw std::invalid_argument("add_edge: self-loop");
  if (has_edge(u, v)) throw std::invalid_argument("add_edge: duplicate edge");
  adj_[static_cast<std::size_t>(u) * words_ + v / 64] |= Mask{1} << (v % 64);
  adj_[static_cast<std::size_t>(v) * words_ + u / 64] |= Mask{1} << (u % 64);
  ++degree_[static_cast<std::size_t>(u)];
  ++degree_[static_cast<std::size_t>(v)];
  ++edge_count_;
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw std::invalid_argument("has_edge: vertex out of range");
  return (adj_[static_cast<std::size_t>(u) * words_ + v / 64] >>
          (v % 64)) & 1;
}

double Graph::density() const {
  if (n_ < 2) return 0.0;
  return static_cast<double>(edge_count_) /
         (static_cast<double>(n_) * (n_ - 1) / 2.0);
}

Mask Graph::adjacency_word(int v) const {
  if (n_ > 64) throw std::logic_error("adjacency_word: n > 64");
  return n_ == 0 ? 0 : adj_[static_cast<std::size_t>(v) * words_];
}

Graph er_graph(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("er_graph: p must be in [0, 1]");
  Graph g(n);
  rng::Stream s(rng::stream_seed(seed, rng::kStreamErGraph));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (s.bernoulli(p)) g.add_edge(i, j);
  return g;
}

Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: n must be >= 3");
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph clique_graph(int n) {
  if (n < 1) throw std::invalid_argument("clique_graph: n must be >= 1");
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph bipartite_complement(int n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("bipartite_complement: n must be even, >= 2");
  Graph g(n);
  const int half = n / 2;
  for (int side = 0; side < 2; ++side)
    for (int i = side * half; i < (side + 1) * half; ++i)
      for (int j = i + 1; j < (side + 1) * half; ++j) g.add_edge(i, j);
  return g;
}

std::int64_t cut_value(const Graph& g, Mask s) {
  const int n = g.n();
  if (n > 63) throw std::invalid_argument("cut_value: mask form needs n <= 63");
  if (n == 0) return 0;
  const Mask full = (Mask{1} << n) - 1;
  if (s & ~full) throw std::invalid_argument("cut_value: mask outside [n]");
  const Mask outside = full & ~s;
  std::int64_t cut = 0;
  Mask rest = s;
  while (rest) {
    const int v = std::countr_zero(rest);
    cut += popcount(g.adjacency_word(v) & outside);
    rest &= rest - 1;
  }
  return cut;
}

std::int64_t cut_value(const Graph& g, const std::vector<bool>& side) {
  const int n = g.n();
  if (static_cast<int>(side.size()) != n)
    throw std::invalid_argument("cut_value: side size mismatch");
  const int words = g.words_per_row();
  std::vector<std::uint64_t> in(static_cast<std::size_t>(words), 0);
  for (int v = 0; v < n; ++v)
    if (side[static_cast<std::size_t>(v)])
      in[static_cast<std::size_t>(v / 64)] |= Mask{1} << (v % 64);
  std::int64_t cut = 0;
  for (int v = 0; v < n; ++v) {
    if (!side[static_cast<std::size_t>(v)]) continue;
    const std::uint64_t* row = g.row(v);
    for (int w = 0; w < words; ++w)
      cut += popcount(row[w] & ~in[static_cast<std::size_t>(w)]);
  }
  // ~in has bits past n set, but adjacency rows never do.
  return cut;
}

FourierExpansion cut_polynomial(const Graph& g, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("cut_polynomial: p must be in [0, 1]");
  const int n = check_dimension(g.n());
  Vec c = Vec::Zero(Index{1} << n);
  c[0] = g.edge_count() / 2.0 -
         p * (static_cast<double>(n) * (n - 1)) / 4.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Index s = (Index{1} << i) | (Index{1} << j);
      c[s] = g.has_edge(i, j) ? p / 2.0 - 0.5 : p / 2.0;
    }
  return FourierExpansion(n, std::move(c));
}

double evaluate_cut_identity(const Graph& g, double p, Mask s) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("evaluate_cut_identity: p must be in [0, 1]");
  const int n = g.n();
  if (n > 63)
    throw std::invalid_argument("evaluate_cut_identity: needs n <= 63");
  if (n < 64 && (s >> n))
    throw std::invalid_argument("evaluate_cut_identity: mask outside [n]");

  // Polynomial side, straight O(n^2) pair sum at the indicator point
  // (coordinate +1 exactly when the vertex is in S).
  CompensatedSum val;
  val.add(g.edge_count() / 2.0 -
          p * (static_cast<double>(n) * (n - 1)) / 4.0);
  for (int i = 0; i < n; ++i) {
    const int xi = (s >> i) & 1 ? 1 : -1;
    for (int j = i + 1; j < n; ++j) {
      const int xj = (s >> j) & 1 ? 1 : -1;
      const double cij = g.has_edge(i, j) ? p / 2.0 - 0.5 : p / 2.0;
      val.add(cij * (xi * xj));
    }
  }

  const int size = popcount(s);
  const double expected = p * static_cast<double>(size) * (n - size);
  const double comb = static_cast<double>(cut_value(g, s)) - expected;
  return std::abs(val.value() - comb);
}

namespace {

// Gray-code sweep over a fixed counter partition. The objective maps
// (cut, |S|) to a score; the best (score, then smallest mask) per segment
// is merged in segment order, so the result is thread-count independent.
template <class Objective>
CutSearchResult sweep_all_cuts(const Graph& g, double p, Objective score) {
  const int n = g.n();
  if (n > 24)
    throw std::invalid_argument(
        "exhaustive cut search capped at n = 24; use the heuristic search");
  const std::int64_t total = std::int64_t{1} << n;
  const Index segments = n >= 17 ? 256 : 1;
  const std::int64_t seg_len = total / segments;

  std::vector<double> seg_score(static_cast<std::size_t>(segments));
  std::vector<Mask> seg_mask(static_cast<std::size_t>(segments));
  par::for_blocks(segments, [&](Index q) {
    const std::int64_t t0 = q * seg_len;
    const std::int64_t t1 = t0 + seg_len;
    Mask s = static_cast<Mask>(t0) ^ (static_cast<Mask>(t0) >> 1);
    std::int64_t cut = cut_value(g, s);
    int size = popcount(s);
    double best = score(cut, size, n, p);
    Mask best_mask = s;
    for (std::int64_t t = t0; t + 1 < t1; ++t) {
      const int b = std::countr_zero(static_cast<Mask>(t + 1));
      const Mask bit = Mask{1} << b;
      s ^= bit;
      const int a = popcount(g.adjacency_word(b) & s);
      if (s & bit) {
        cut += g.degree(b) - 2 * a;
        ++size;
      } else {
        cut += 2 * a - g.degree(b);
        --size;
      }
      const double sc = score(cut, size, n, p);
      if (sc > best || (sc == best && s < best_mask)) {
        best = sc;
        best_mask = s;
      }
    }
    seg_score[static_cast<std::size_t>(q)] = best;
    seg_mask[static_cast<std::size_t>(q)] = best_mask;
  });

  double best = seg_score[0];
  Mask best_mask = seg_mask[0];
  for (Index q = 1; q < segments; ++q) {
    const double sc = seg_score[static_cast<std::size_t>(q)];
    const Mask m = seg_mask[static_cast<std::size_t>(q)];
    if (sc > best || (sc == best && m < best_mask)) {
      best = sc;
      best_mask = m;
    }
  }

  CutSearchResult r;
  r.best_mask = best_mask;
  for (int v = 0; v < n; ++v)
    if ((best_mask >> v) & 1) r.best_set.push_back(v);
  r.cut_value = cut_value(g, best_mask);
  r.expected = p * static_cast<double>(popcount(best_mask)) *
               (n - popcount(best_mask));
  r.deviation = std::abs(static_cast<double>(r.cut_value) - r.expected);
  r.exhaustive = true;
  r.cuts_examined = total;
  return r;
}

double abs_score(std::int64_t cut, int size, int n, double p) {
  return std::abs(static_cast<double>(cut) -
                  p * static_cast<double>(size) * (n - size));
}

double surplus_score(std::int64_t cut, int size, int n, double p) {
  return static_cast<double>(cut) -
         p * static_cast<double>(size) * (n - size);
}

}  // namespace

CutSearchResult exhaustive_cut_deviation(const Graph& g, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("exhaustive_cut_deviation: p in [0, 1]");
  if (g.n() == 0) {
    CutSearchResult r;
    r.exhaustive = true;
    r.cuts_examined = 1;
    return r;
  }
  return sweep_all_cuts(g, p, abs_score);
}

CutSearchResult exhaustive_cut_surplus(const Graph& g, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("exhaustive_cut_surplus: p in [0, 1]");
  if (g.n() == 0) {
    CutSearchResult r;
    r.exhaustive = true;
    r.cuts_examined = 1;
    return r;
  }
  CutSearchResult r = sweep_all_cuts(g, p, surplus_score);
  // Deviation keeps the signed surplus here.
  r.deviation = static_cast<double>(r.cut_value) - r.expected;
  return r;
}

CutSearchResult heuristic_cut_deviation(const Graph& g, double p,
                                        int restarts, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("heuristic_cut_deviation: p in [0, 1]");
  if (restarts < 1)
    throw std::invalid_argument("heuristic_cut_deviation: restarts >= 1");
  const int n = g.n();
  CutSearchResult out;
  if (n == 0) {
    out.cuts_examined = 1;
    return out;
  }
  const int words = g.words_per_row();

  struct RestartBest {
    double deviation = -1.0;
    std::vector<std::uint64_t> side;
    std::int64_t examined = 0;
  };
  std::vector<RestartBest> bests(static_cast<std::size_t>(restarts));

  par::for_blocks(restarts, [&](Index r) {
    auto stream = rng::Stream::for_block(seed, rng::kStreamCutSearch,
                                         static_cast<std::uint64_t>(r));
    std::vector<std::uint64_t> side(static_cast<std::size_t>(words), 0);
    for (int v = 0; v < n; ++v)
      if (stream.bernoulli(0.5))
        side[static_cast<std::size_t>(v / 64)] |= Mask{1} << (v % 64);

    auto count_in_side = [&](int v) {
      const std::uint64_t* row = g.row(v);
      int c = 0;
      for (int w = 0; w < words; ++w)
        c += popcount(row[w] & side[static_cast<std::size_t>(w)]);
      return c;
    };
    auto in_side = [&](int v) {
      return (side[static_cast<std::size_t>(v / 64)] >> (v % 64)) & 1;
    };

    std::int64_t cut = 0;
    int size = 0;
    for (int v = 0; v < n; ++v) {
      if (!in_side(v)) continue;
      ++size;
      cut += g.degree(v) - count_in_side(v);
    }

    double dev = std::abs(static_cast<double>(cut) -
                          p * static_cast<double>(size) * (n - size));
    std::int64_t examined = 1;
    const int max_moves = 4 * n + 64;
    for (int move = 0; move < max_moves; ++move) {
      double cand_best = dev;
      int cand_v = -1;
      std::int64_t cand_cut = 0;
      int cand_size = 0;
      for (int v = 0; v < n; ++v) {
        const int a = count_in_side(v);
        std::int64_t ncut;
        int nsize;
        if (in_side(v)) {
          ncut = cut + 2 * a - g.degree(v);
          nsize = size - 1;
        } else {
          ncut = cut + g.degree(v) - 2 * a;
          nsize = size + 1;
        }
        ++examined;
        const double nd = std::abs(static_cast<double>(ncut) -
                                   p * static_cast<double>(nsize) *
                                       (n - nsize));
        if (nd > cand_best + 1e-9) {
          cand_best = nd;
          cand_v = v;
          cand_cut = ncut;
          cand_size = nsize;
        }
      }
      if (cand_v < 0) break;
      side[static_cast<std::size_t>(cand_v / 64)] ^= Mask{1} << (cand_v % 64);
      cut = cand_cut;
      size = cand_size;
      dev = cand_best;
    }
    bests[static_cast<std::size_t>(r)] = {dev, std::move(side), examined};
  });

  int win = 0;
  for (int r = 1; r < restarts; ++r)
    if (bests[static_cast<std::size_t>(r)].deviation >
        bests[static_cast<std::size_t>(win)].deviation)
      win = r;
  const auto& w = bests[static_cast<std::size_t>(win)];
  std::vector<bool> side_bits(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    side_bits[static_cast<std::size_t>(v)] =
        (w.side[static_cast<std::size_t>(v / 64)] >> (v % 64)) & 1;
  out.cut_value = cut_value(g, side_bits);
  int size = 0;
  for (int v = 0; v < n; ++v)
    if (side_bits[static_cast<std::size_t>(v)]) {
      out.best_set.push_back(v);
      ++size;
    }
  if (n <= 63) {
    for (int v : out.best_set) out.best_mask |= Mask{1} << v;
  }
  out.expected = p * static_cast<double>(size) * (n - size);
  out.deviation = std::abs(static_cast<double>(out.cut_value) - out.expected);
  out.exhaustive = false;
  for (const auto& b : bests) out.cuts_examined += b.examined;
  return out;
}

namespace {

// Centered binomial pmf over counts 0..k, built outward from the mode by
// exact ratio steps, then renormalized.
Vec binomial_pmf(std::int64_t k) {
  Vec p(k + 1);
  const std::int64_t m = k / 2;
  const double log_center = std::lgamma(static_cast<double>(k) + 1.0) -
                            std::lgamma(static_cast<double>(m) + 1.0) -
                            std::lgamma(static_cast<double>(k - m) + 1.0) -
                            static_cast<double>(k) * std::numbers::ln2;
  p[m] = std::exp(log_center);
  for (std::int64_t i = m; i > 0; --i)
    p[i - 1] = p[i] * static_cast<double>(i) /
               static_cast<double>(k - i + 1);
  for (std::int64_t i = m; i < k; ++i)
    p[i + 1] = p[i] * static_cast<double>(k - i) /
               static_cast<double>(i + 1);
  CompensatedSum s;
  for (std::int64_t i = 0; i <= k; ++i) s.add(p[i]);
  p /= s.value();
  return p;
}

}  // namespace

double abs_linear_expectation(double w_a, std::int64_t k_a, double w_b,
                              std::int64_t k_b) {
  if (k_a < 0 || k_b < 0)
    throw std::invalid_argument("abs_linear_expectation: negative count");
  if (!std::isfinite(w_a) || !std::isfinite(w_b))
    throw std::invalid_argument("abs_linear_expectation: non-finite weight");
  const Vec pa = binomial_pmf(k_a);
  const Vec pb = binomial_pmf(k_b);
  Vec va(k_a + 1), vb(k_b + 1);
  for (std::int64_t i = 0; i <= k_a; ++i)
    va[i] = w_a * static_cast<double>(k_a - 2 * i);
  for (std::int64_t j = 0; j <= k_b; ++j)
    vb[j] = w_b * static_cast<double>(k_b - 2 * j);
  const Index cols = k_b + 1;
  return blocked_sum((k_a + 1) * cols, [&](Index t) {
    const Index i = t / cols;
    const Index j = t % cols;
    return pa[i] * pb[j] * std::abs(va[i] + vb[j]);
  });
}

CutInfluence cut_polynomial_influence(const Graph& g, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("cut_polynomial_influence: p in [0, 1]");
  const int n = g.n();
  CutInfluence out;
  out.per_coordinate_l1 = Vec::Zero(n);
  par::for_blocks(n, [&](Index v) {
    const int deg = g.degree(static_cast<int>(v));
    out.per_coordinate_l1[v] =
        abs_linear_expectation(p / 2.0, n - 1 - deg, p / 2.0 - 0.5, deg);
  });
  CompensatedSum s;
  for (int v = 0; v < n; ++v) s.add(out.per_coordinate_l1[v]);
  out.total_l1 = s.value();

  const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
  const double m = static_cast<double>(g.edge_count());
  const double ce = p / 2.0 - 0.5;
  const double cn = p / 2.0;
  out.total_l2 = 2.0 * ((pairs - m) * cn * cn + m * ce * ce);
  return out;
}

}  // namespace hcube
