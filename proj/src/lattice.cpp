#include "lkllt/lattice.hpp"

#include <limits>

namespace lkllt {
namespace {

// Index range [first, last] of nonzero entries; first > last when all zero.
std::pair<Eigen::Index, Eigen::Index> nonzero_range(const Eigen::ArrayXd& v) {
  Eigen::Index first = 0;
  Eigen::Index last = v.size() - 1;
  while (first <= last && v(first) == 0.0) ++first;
  while (last >= first && v(last) == 0.0) --last;
  return {first, last};
}

}  // namespace

SignedSeq::SignedSeq(long offset, Eigen::ArrayXd values) {
  const auto [first, last] = nonzero_range(values);
  if (first > last) return;
  offset_ = offset + static_cast<long>(first);
  values_ = values.segment(first, last - first + 1);
}

LatticeDist LatticeDist::from_pmf(long offset, Eigen::ArrayXd pmf) {
  require(pmf.size() > 0, ErrorKind::InvalidDistribution, "empty pmf");
  require(pmf.allFinite() && (pmf >= 0.0).all(), ErrorKind::InvalidDistribution,
          "pmf entries must be finite and nonnegative");
  const double total = pmf.sum();
  require(std::abs(total - 1.0) <= 1e-9, ErrorKind::InvalidDistribution,
          "pmf must sum to one within 1e-9");
  const auto [first, last] = nonzero_range(pmf);
  Eigen::ArrayXd trimmed = pmf.segment(first, last - first + 1) / total;
  return LatticeDist(offset + static_cast<long>(first), std::move(trimmed));
}

LatticeDist LatticeDist::point_mass(long k) {
  return LatticeDist(k, Eigen::ArrayXd::Ones(1));
}

double LatticeDist::cdf(long k) const {
  if (k < offset_) return 0.0;
  if (k >= last()) return 1.0;
  return pmf_.head(k - offset_ + 1).sum();
}

double LatticeDist::mean() const { return moment(1); }

double LatticeDist::variance() const {
  const double mu = mean();
  CompensatedSum acc;
  for (long i = 0; i < size(); ++i) {
    const double d = static_cast<double>(offset_ + i) - mu;
    acc.add(pmf_(i) * d * d);
  }
  return acc.value();
}

double LatticeDist::moment(int order) const {
  CompensatedSum acc;
  for (long i = 0; i < size(); ++i) {
    acc.add(pmf_(i) * std::pow(static_cast<double>(offset_ + i), order));
  }
  return acc.value();
}

LatticeDist LatticeDist::shifted(long by) const { return LatticeDist(offset_ + by, pmf_); }

LatticeDist dist_from_weights(long offset, std::span<const double> weights) {
  return dist_from_weights(
      offset, Eigen::Map<const Eigen::ArrayXd>(weights.data(),
                                               static_cast<Eigen::Index>(weights.size())));
}

LatticeDist dist_from_weights(long offset, const Eigen::ArrayXd& weights) {
  require(weights.size() > 0, ErrorKind::InvalidDistribution, "no weights");
  require(weights.allFinite() && (weights >= 0.0).all(), ErrorKind::InvalidDistribution,
          "weights must be finite and nonnegative");
  const double total = weights.sum();
  require(total > 0.0, ErrorKind::InvalidDistribution, "weights are all zero");
  return LatticeDist::from_pmf(offset, weights / total);
}

LatticeDist smooth_uniform(const LatticeDist& dist, int m) {
  require(m >= 1, ErrorKind::InvalidParameter, "smoothing span m must be >= 1");
  if (m == 1) return dist;
  // out(j) = (p(j-m+1) + ... + p(j)) / m; summed per window so no running
  // subtraction drift creeps into the tails.
  const long n = dist.size();
  const Eigen::ArrayXd& p = dist.pmf();
  Eigen::ArrayXd out(n + m - 1);
  for (long j = 0; j < n + m - 1; ++j) {
    const long lo = std::max<long>(0, j - m + 1);
    const long hi = std::min<long>(n - 1, j);
    out(j) = p.segment(lo, hi - lo + 1).sum() / m;
  }
  return LatticeDist::from_pmf(dist.offset(), std::move(out));
}

SignedSeq difference(const SignedSeq& s, int n) {
  require(n >= 0, ErrorKind::InvalidParameter, "difference order must be >= 0");
  return span_difference(s, n, 1);
}

SignedSeq span_difference(const SignedSeq& s, int n, int m) {
  require(n >= 0, ErrorKind::InvalidParameter, "difference order must be >= 0");
  require(m >= 1, ErrorKind::InvalidParameter, "difference span m must be >= 1");
  long offset = s.offset();
  Eigen::ArrayXd v = s.values();
  for (int step = 0; step < n && v.size() > 0; ++step) {
    const Eigen::Index len = v.size();
    Eigen::ArrayXd next = Eigen::ArrayXd::Zero(len + m);
    // next(t) = s(offset - m + t + m) - s(offset - m + t)
    next.head(len) += v;
    next.tail(len) -= v;
    offset -= m;
    SignedSeq trimmed(offset, std::move(next));
    offset = trimmed.offset();
    v = trimmed.values();
  }
  return SignedSeq(offset, std::move(v));
}

Norm norm_from_p(double p) {
  if (p == 1.0) return Norm::L1;
  if (p == 2.0) return Norm::L2;
  if (std::isinf(p) && p > 0) return Norm::Linf;
  fail(ErrorKind::InvalidParameter, "only p in {1, 2, inf} is supported");
}

double seq_norm(const SignedSeq& s, Norm norm) {
  if (s.is_zero()) return 0.0;
  switch (norm) {
    case Norm::L1: return s.values().abs().sum();
    case Norm::L2: return std::sqrt(s.values().square().sum());
    case Norm::Linf: return s.values().abs().maxCoeff();
  }
  return 0.0;
}

double seq_norm(const SignedSeq& s, double p) { return seq_norm(s, norm_from_p(p)); }

SignedSeq operator-(const SignedSeq& a, const SignedSeq& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return SignedSeq(b.offset(), -b.values());
  const long lo = std::min(a.offset(), b.offset());
  const long hi = std::max(a.last(), b.last());
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(hi - lo + 1);
  out.segment(a.offset() - lo, a.size()) += a.values();
  out.segment(b.offset() - lo, b.size()) -= b.values();
  return SignedSeq(lo, std::move(out));
}

LatticeDist convolve(const LatticeDist& f, const LatticeDist& g) {
  const long nf = f.size();
  const long ng = g.size();
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(nf + ng - 1);
  for (long i = 0; i < nf; ++i) {
    out.segment(i, ng) += f.pmf()(i) * g.pmf();
  }
  return LatticeDist::from_pmf(f.offset() + g.offset(), std::move(out));
}

AlignedPair align(const LatticeDist& f, const LatticeDist& g) {
  AlignedPair out;
  out.lo = std::min(f.offset(), g.offset());
  const long hi = std::max(f.last(), g.last());
  out.first = Eigen::ArrayXd::Zero(hi - out.lo + 1);
  out.second = Eigen::ArrayXd::Zero(hi - out.lo + 1);
  out.first.segment(f.offset() - out.lo, f.size()) = f.pmf();
  out.second.segment(g.offset() - out.lo, g.size()) = g.pmf();
  return out;
}

}  // namespace lkllt
