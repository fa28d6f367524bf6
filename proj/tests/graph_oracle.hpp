#pragma once

// Brute-force graph utilities for the tests: a plain adjacency matrix and the
// resampling chain enumerated step by step.

#include <bit>
#include <cmath>
#include <vector>

#include "lkllt/er.hpp"

namespace graph_oracle {

using lkllt::ErStatistic;
using lkllt::GraphState;

// Plain adjacency-matrix graph, independent of GraphState.
struct Plain {
  int n;
  std::vector<std::vector<int>> a;
  explicit Plain(int n_) : n(n_), a(n_, std::vector<int>(n_, 0)) {}
};

inline Plain plain_from_mask(int n, unsigned mask) {
  Plain g(n);
  int b = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++b)
      if ((mask >> b) & 1u) g.a[i][j] = g.a[j][i] = 1;
  return g;
}

inline GraphState to_state(const Plain& p) {
  GraphState g(p.n);
  for (int i = 0; i < p.n; ++i)
    for (int j = i + 1; j < p.n; ++j)
      if (p.a[i][j]) g.add_edge(i, j);
  return g;
}

inline Plain to_plain(const GraphState& g) {
  Plain p(g.n());
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j)
      if (i != j && g.has_edge(i, j)) p.a[i][j] = 1;
  return p;
}

inline int plain_degree(const Plain& g, int i) {
  int d = 0;
  for (int j = 0; j < g.n; ++j) d += g.a[i][j];
  return d;
}

inline long plain_isolated(const Plain& g) {
  long c = 0;
  for (int i = 0; i < g.n; ++i) c += plain_degree(g, i) == 0;
  return c;
}

inline long plain_triangles(const Plain& g) {
  long c = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      for (int k = j + 1; k < g.n; ++k) c += g.a[i][j] && g.a[j][k] && g.a[i][k];
  return c;
}

inline long plain_stat(const Plain& g, ErStatistic s) {
  return s == ErStatistic::Isolated ? plain_isolated(g) : plain_triangles(g);
}

// Law of the next graph under one resampling step.
inline std::vector<std::pair<Plain, double>> step(const Plain& g, double p) {
  std::vector<std::pair<Plain, double>> out;
  const double pairs = g.n * (g.n - 1) / 2.0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      Plain on = g, off = g;
      on.a[i][j] = on.a[j][i] = 1;
      off.a[i][j] = off.a[j][i] = 0;
      out.push_back({on, p / pairs});
      out.push_back({off, (1 - p) / pairs});
    }
  }
  return out;
}

inline double brute_jump(const Plain& g, double p, ErStatistic s, int m) {
  const long w = plain_stat(g, s);
  double q = 0.0;
  for (const auto& [next, pr] : step(g, p))
    if (plain_stat(next, s) == w + m) q += pr;
  return q;
}

inline double brute_two_step(const Plain& g, double p, ErStatistic s, int m) {
  const long w = plain_stat(g, s);
  double q = 0.0;
  for (const auto& [next, pr] : step(g, p))
    if (plain_stat(next, s) == w + m) q += pr * brute_jump(next, p, s, m);
  return q;
}

inline double prob_of_mask(int n, unsigned mask, double p) {
  const int pairs = n * (n - 1) / 2;
  const int k = std::popcount(mask);
  return std::pow(p, k) * std::pow(1 - p, pairs - k);
}

}  // namespace graph_oracle
