#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lkllt/report.hpp"
#include "lkllt/smoothing.hpp"

namespace lkllt {

/// Simple undirected graph on vertices 0..n-1 with bit-packed adjacency rows
/// and cached degrees.
class GraphState {
 public:
  explicit GraphState(int n);

  int n() const { return n_; }
  bool has_edge(int i, int j) const {
    return (row(i)[j >> 6] >> (j & 63)) & 1u;
  }
  void add_edge(int i, int j);
  void remove_edge(int i, int j);
  void toggle(int i, int j) { has_edge(i, j) ? remove_edge(i, j) : add_edge(i, j); }

  int degree(int i) const { return degree_[i]; }
  long edge_count() const { return edges_; }
  int common_neighbors(int i, int j) const;
  std::span<const std::uint64_t> row(int i) const {
    return {bits_.data() + static_cast<std::size_t>(i) * words_, words_};
  }

  friend bool operator==(const GraphState&, const GraphState&) = default;

 private:
  std::uint64_t* mutable_row(int i) { return bits_.data() + static_cast<std::size_t>(i) * words_; }

  int n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<int> degree_;
  long edges_ = 0;
};

/// G(n, p); every one of the C(n, 2) edges present independently.
GraphState gnp_sample(int n, double p, Rng& rng);
GraphState gnp_sample(int n, double p, std::uint64_t seed);

struct GraphStats {
  long w_isolated = 0;  // degree-0 vertices
  long w1 = 0;          // degree-1 vertices
  long e2 = 0;          // isolated edges
  long triangles = 0;
};

GraphStats graph_stats(const GraphState& g);

enum class ErStatistic { Isolated, Triangles };

const char* to_string(ErStatistic s);
ErStatistic parse_statistic(const std::string& name);

long statistic_value(const GraphState& g, ErStatistic s);

struct IsoMoments {
  double ew = 0.0, ew2 = 0.0, ew3 = 0.0, ew4 = 0.0;
  double ew1 = 0.0, ee2 = 0.0, ew1_sq = 0.0, ee2_sq = 0.0, ew1_e2 = 0.0;
  double sigma2 = 0.0;
};

/// Closed-form moments of the isolated-vertex count and its auxiliaries.
IsoMoments iso_moments(int n, double p);

/// Jump probabilities of the isolated-vertex count under one step of the
/// edge-resampling chain (pick a uniform vertex pair, resample its edge),
/// from the table of counts W, W1, E2. q11 is the table's entry for the
/// two-step +1 probability; the other two-step entries are exact.
struct IsoQ {
  double q1 = 0.0, q_neg1 = 0.0, q2 = 0.0, q_neg2 = 0.0;
  double q11 = 0.0, q_neg1_neg1 = 0.0, q22 = 0.0, q_neg2_neg2 = 0.0;
};
IsoQ iso_q(const GraphState& g, double p);

/// Plug-in exchangeable-pair bounds for the isolated-vertex count from the
/// closed-form moments: jumps ±1 bound D_1 and D_2, jumps ±2 bound the span-2
/// terms.
struct IsoBounds {
  double d1 = 0.0, d2 = 0.0, d12 = 0.0, d22 = 0.0;
};
IsoBounds iso_smoothing_bounds(int n, double p);

struct TriClosedForms {
  double mu = 0.0;
  double sigma2 = 0.0;
  double q1 = 0.0;
  double var_q1_bound = 0.0;
  double var_qneg1_bound = 0.0;
  double ediff_plus = 0.0;
  double ediff_minus = 0.0;
  double d1_bound = 0.0;  // (√var_q1 + √var_qneg1) / q1
  double d2_bound = 0.0;  // (2 var_q1 + ediff+ + 2 var_qneg1 + ediff-) / q1²
};
TriClosedForms tri_closed_forms(int n, double p);

struct TriQ {
  double q1 = 0.0;
  double q_neg1 = 0.0;
};
TriQ tri_q(const GraphState& g, double p);

/// Change of the statistic when the status of pair {a, b} is flipped.
long toggle_delta(const GraphState& g, int a, int b, ErStatistic s);

/// P[W' = W + m | G] by enumerating every pair and both resample outcomes.
double jump_probability(const GraphState& g, double p, ErStatistic s, int m);

/// P[W' = W + m, W'' = W' + m | G]: every first step that moves the
/// statistic by m, followed by the one-step probability on the new graph.
double two_step_probability(const GraphState& g, double p, ErStatistic s, int m);

class ErdosRenyiPairModel {
 public:
  using State = GraphState;

  ErdosRenyiPairModel(int n, double p, ErStatistic statistic);

  State sample(Rng& rng) const { return gnp_sample(n_, p_, rng); }
  JumpProbabilities jumps(const State& g, int m) const;

 private:
  int n_;
  double p_;
  ErStatistic statistic_;
};

/// Exact law of the statistic over all 2^C(n,2) graphs and its raw moments
/// E W^k, k = 1..4.
struct EnumeratedLaw {
  LatticeDist law = LatticeDist::point_mass(0);
  double moments[4] = {0.0, 0.0, 0.0, 0.0};
};
EnumeratedLaw enumerate_graphs_oracle(int n, double p, ErStatistic s);

/// The nine isolated-vertex moments by the same enumeration.
IsoMoments enumerate_iso_moments(int n, double p);

/// Edge probability p = c n^{-alpha}.
struct ErRegime {
  ErStatistic statistic = ErStatistic::Isolated;
  double c = 1.0;
  double alpha = 1.0;

  double p(long n) const;
};

/// Empirical law of the statistic from `replicates` graphs per n against
/// TP(μ_n, σ_n²) from the closed forms.
RateTable er_rate_experiment(const ErRegime& regime, std::span<const long> n_grid,
                             long replicates, std::uint64_t seed);

}  // namespace lkllt
