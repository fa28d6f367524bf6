#pragma once

#include <string>

#include "lkllt/lattice.hpp"

namespace lkllt {

struct MetricKind {
  enum class Tag { Kolmogorov, Wasserstein, TotalVariation, Local, LocalM };

  Tag tag = Tag::Kolmogorov;
  int m = 1;

  static MetricKind kolmogorov() { return {Tag::Kolmogorov, 1}; }
  static MetricKind wasserstein() { return {Tag::Wasserstein, 1}; }
  static MetricKind total_variation() { return {Tag::TotalVariation, 1}; }
  static MetricKind local() { return {Tag::Local, 1}; }
  static MetricKind local_m(int m);

  std::string name() const;
  friend bool operator==(const MetricKind&, const MetricKind&) = default;
};

double kolmogorov_distance(const LatticeDist& f, const LatticeDist& g);
double wasserstein_distance(const LatticeDist& f, const LatticeDist& g);
double total_variation_distance(const LatticeDist& f, const LatticeDist& g);
/// ‖Δ F̄^m - Δ Ḡ^m‖_∞, i.e. the sup-distance of the smoothed pmfs.
double local_distance(const LatticeDist& f, const LatticeDist& g, int m = 1);

double distance(const LatticeDist& f, const LatticeDist& g, MetricKind kind);

/// D_{n,m}(F) = m ‖Δ^{n+1} F̄^m‖_1. Since ΔF(j) = P[X = j+1], this is
/// m times the l1 norm of the n-th difference of the smoothed pmf.
double smoothing_term(const LatticeDist& f, int n, int m);

/// The same quantity as a supremum over test functions |g| <= 1 of
/// E[(Δ_m Δ^{n-1} g)(X)], evaluated at the extremal sign function. Kept as an
/// independent cross-check of smoothing_term.
double smoothing_term_dual(const LatticeDist& f, int n, int m);

/// sup over |g| <= 1 of E[(Δ_m^n g)(X)] = ‖Δ_m^n pmf‖_1. This is the quantity
/// bounded by the exchangeable-pair estimates and multiplicative under
/// convolution. Agrees with smoothing_term when n = 1 or m = 1.
double span_smoothing_term(const LatticeDist& f, int n, int m);

}  // namespace lkllt
