#pragma once

#include "hcube/cube.hpp"

#include <cstdint>
#include <vector>

namespace hcube {

// Undirected simple graph over vertices 0..n-1, adjacency held as n rows
// of bit words so neighborhood intersections are popcounts.
class Graph {
 public:
  explicit Graph(int n);

  int n() const { return n_; }
  std::int64_t edge_count() const { return edge_count_; }
  int degree(int v) const { return degree_[static_cast<std::size_t>(v)]; }

  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;

  // |E| / C(n, 2).
  double density() const;

  // Row for n <= 64, packed into one word.
  Mask adjacency_word(int v) const;
  const std::uint64_t* row(int v) const {
    return adj_.data() + static_cast<std::size_t>(v) * words_;
  }
  int words_per_row() const { return words_; }

 private:
  int n_ = 0;
  int words_ = 0;
  std::int64_t edge_count_ = 0;
  std::vector<std::uint64_t> adj_;
  std::vector<int> degree_;
};

Graph er_graph(int n, double p, std::uint64_t seed);
Graph cycle_graph(int n);
Graph clique_graph(int n);
// Two disjoint cliques on n/2 vertices each; n must be even.
Graph bipartite_complement(int n);

struct CutSearchResult {
  Mask best_mask = 0;          // valid when n <= 63
  std::vector<int> best_set;   // the same subset as vertex indices
  std::int64_t cut_value = 0;
  double expected = 0.0;       // p |S| |S^c|
  double deviation = 0.0;
  bool exhaustive = false;
  std::int64_t cuts_examined = 0;
};

// Edges across (S, S^c).
std::int64_t cut_value(const Graph& g, Mask s);
std::int64_t cut_value(const Graph& g, const std::vector<bool>& side);

// The centered pair polynomial for probability p: constant
// |E|/2 - p n(n-1)/4, pair {i,j} coefficient p/2 off edges and p/2 - 1/2 on
// edges. Its value at the indicator point of S is cut(S) - p|S||S^c|.
FourierExpansion cut_polynomial(const Graph& g, double p);

// |g_p(x_S) - (cut(S) - p|S||S^c|)|, the polynomial side evaluated by a
// direct O(n^2) pair sum and the combinatorial side by edge counting.
double evaluate_cut_identity(const Graph& g, double p, Mask s);

// Exact max over all 2^n subsets of |cut - p|S||S^c||, Gray-code sweep with
// O(1)-word incremental cut updates; fixed partition layout, merged in
// order, ties to the smallest mask. n <= 24.
CutSearchResult exhaustive_cut_deviation(const Graph& g, double p);

// Same sweep maximizing the signed surplus cut - p|S||S^c| (no absolute
// value); used for one-sided deviation experiments.
CutSearchResult exhaustive_cut_surplus(const Graph& g, double p);

// Single-flip hill climbing on the absolute deviation from random starts;
// any returned cut is a witness lower bound. Deterministic in seed.
CutSearchResult heuristic_cut_deviation(const Graph& g, double p,
                                        int restarts, std::uint64_t seed);

// Exact E|w_a (k_a-step +-1 sum) + w_b (k_b-step +-1 sum)| through the two
// binomial supports, O(k_a k_b).
double abs_linear_expectation(double w_a, std::int64_t k_a, double w_b,
                              std::int64_t k_b);

struct CutInfluence {
  Vec per_coordinate_l1;
  double total_l1 = 0.0;
  double total_l2 = 0.0;
};

// Influence totals of the cut polynomial without cube enumeration: L1 per
// coordinate by abs_linear_expectation over the vertex's degree split, L2
// in closed form from the pair coefficients.
CutInfluence cut_polynomial_influence(const Graph& g, double p);

}  // namespace hcube
