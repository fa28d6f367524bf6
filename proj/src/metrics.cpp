#include "lkllt/metrics.hpp"

#include <vector>

namespace lkllt {
namespace {

// Finite-difference operator as weights on shifts 0..size-1:
// (Lg)(i) = sum_s weight[s] * g(i + s).
using Stencil = std::vector<double>;

Stencil compose(const Stencil& a, const Stencil& b) {
  Stencil out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Stencil forward_difference(int span) {
  Stencil s(static_cast<std::size_t>(span) + 1, 0.0);
  s.front() = -1.0;
  s.back() = 1.0;
  return s;
}

// sup over |g| <= 1 of E[(L g)(X)]. Collects the coefficient of every g(k),
// picks g = sign(coefficient), then evaluates E[(L g)(X)] directly.
double dual_supremum(const LatticeDist& f, const Stencil& stencil) {
  const long width = static_cast<long>(stencil.size());
  const long lo = f.offset();
  std::vector<double> coef(static_cast<std::size_t>(f.size() + width - 1), 0.0);
  for (long i = 0; i < f.size(); ++i) {
    for (long s = 0; s < width; ++s) coef[i + s] += f.pmf()(i) * stencil[s];
  }
  std::vector<double> g(coef.size());
  for (std::size_t k = 0; k < coef.size(); ++k) {
    g[k] = coef[k] > 0 ? 1.0 : (coef[k] < 0 ? -1.0 : 0.0);
  }
  CompensatedSum expectation;
  for (long i = 0; i < f.size(); ++i) {
    double lg = 0.0;
    for (long s = 0; s < width; ++s) lg += stencil[s] * g[i + s];
    expectation.add(f(lo + i) * lg);
  }
  return expectation.value();
}

void check_orders(int n, int m) {
  require(n >= 1, ErrorKind::InvalidParameter, "smoothing order n must be >= 1");
  require(m >= 1, ErrorKind::InvalidParameter, "smoothing span m must be >= 1");
}

}  // namespace

MetricKind MetricKind::local_m(int m) {
  require(m >= 1, ErrorKind::InvalidParameter, "LocalM needs m >= 1");
  return {Tag::LocalM, m};
}

std::string MetricKind::name() const {
  switch (tag) {
    case Tag::Kolmogorov: return "kolmogorov";
    case Tag::Wasserstein: return "wasserstein";
    case Tag::TotalVariation: return "total_variation";
    case Tag::Local: return "local";
    case Tag::LocalM: return "local[" + std::to_string(m) + "]";
  }
  return "?";
}

double kolmogorov_distance(const LatticeDist& f, const LatticeDist& g) {
  const AlignedPair a = align(f, g);
  double cdf_gap = 0.0;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.first.size(); ++i) {
    cdf_gap += a.first(i) - a.second(i);
    worst = std::max(worst, std::abs(cdf_gap));
  }
  return std::min(worst, 1.0);
}

double wasserstein_distance(const LatticeDist& f, const LatticeDist& g) {
  const AlignedPair a = align(f, g);
  double cdf_gap = 0.0;
  CompensatedSum total;
  // The last hull point has both CDFs equal to one, so it contributes nothing.
  for (Eigen::Index i = 0; i + 1 < a.first.size(); ++i) {
    cdf_gap += a.first(i) - a.second(i);
    total.add(std::abs(cdf_gap));
  }
  return total.value();
}

double total_variation_distance(const LatticeDist& f, const LatticeDist& g) {
  const AlignedPair a = align(f, g);
  return std::min(0.5 * (a.first - a.second).abs().sum(), 1.0);
}

double local_distance(const LatticeDist& f, const LatticeDist& g, int m) {
  require(m >= 1, ErrorKind::InvalidParameter, "local metric span must be >= 1");
  const AlignedPair a = align(smooth_uniform(f, m), smooth_uniform(g, m));
  return (a.first - a.second).abs().maxCoeff();
}

double distance(const LatticeDist& f, const LatticeDist& g, MetricKind kind) {
  switch (kind.tag) {
    case MetricKind::Tag::Kolmogorov: return kolmogorov_distance(f, g);
    case MetricKind::Tag::Wasserstein: return wasserstein_distance(f, g);
    case MetricKind::Tag::TotalVariation: return total_variation_distance(f, g);
    case MetricKind::Tag::Local: return local_distance(f, g, 1);
    case MetricKind::Tag::LocalM: return local_distance(f, g, kind.m);
  }
  return 0.0;
}

double smoothing_term(const LatticeDist& f, int n, int m) {
  check_orders(n, m);
  const LatticeDist smoothed = smooth_uniform(f, m);
  return m * seq_norm(difference(smoothed.as_seq(), n), Norm::L1);
}

double smoothing_term_dual(const LatticeDist& f, int n, int m) {
  check_orders(n, m);
  Stencil op = forward_difference(m);
  for (int i = 1; i < n; ++i) op = compose(op, forward_difference(1));
  return dual_supremum(f, op);
}

double span_smoothing_term(const LatticeDist& f, int n, int m) {
  check_orders(n, m);
  return seq_norm(span_difference(f.as_seq(), n, m), Norm::L1);
}

}  // namespace lkllt
