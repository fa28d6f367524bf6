#pragma once

#include <Eigen/Core>

#include <span>

#include "lkllt/core.hpp"

namespace lkllt {

/// A finitely supported real sequence on the integers. Stored trimmed: the
/// first and last stored values are nonzero unless the sequence is zero.
class SignedSeq {
 public:
  SignedSeq() = default;
  SignedSeq(long offset, Eigen::ArrayXd values);

  long offset() const { return offset_; }
  const Eigen::ArrayXd& values() const { return values_; }
  long size() const { return static_cast<long>(values_.size()); }
  bool is_zero() const { return values_.size() == 0; }
  long last() const { return offset_ + size() - 1; }

  /// Value at integer k; zero outside the stored window.
  double operator()(long k) const {
    const long i = k - offset_;
    return (i >= 0 && i < size()) ? values_(i) : 0.0;
  }

 private:
  long offset_ = 0;
  Eigen::ArrayXd values_;
};

/// Probability distribution on the integers with finite support: mass pmf(i)
/// at offset + i. Trimmed (nonzero end masses), nonnegative, sums to one.
class LatticeDist {
 public:
  /// Validating constructor: entries finite and >= 0, |sum - 1| <= 1e-9
  /// (then renormalized). Exact zeros at either end are trimmed.
  static LatticeDist from_pmf(long offset, Eigen::ArrayXd pmf);
  static LatticeDist point_mass(long k);

  long offset() const { return offset_; }
  long last() const { return offset_ + size() - 1; }
  long size() const { return static_cast<long>(pmf_.size()); }
  const Eigen::ArrayXd& pmf() const { return pmf_; }

  double operator()(long k) const {
    const long i = k - offset_;
    return (i >= 0 && i < size()) ? pmf_(i) : 0.0;
  }
  /// P[X <= k].
  double cdf(long k) const;
  double mean() const;
  double variance() const;
  double moment(int order) const;

  LatticeDist shifted(long by) const;
  SignedSeq as_seq() const { return SignedSeq(offset_, pmf_); }

 private:
  LatticeDist(long offset, Eigen::ArrayXd pmf) : offset_(offset), pmf_(std::move(pmf)) {}

  long offset_ = 0;
  Eigen::ArrayXd pmf_;
};

/// Normalizes nonnegative weights placed at offset, offset+1, ...
LatticeDist dist_from_weights(long offset, std::span<const double> weights);
LatticeDist dist_from_weights(long offset, const Eigen::ArrayXd& weights);

/// Law of X + U with U uniform on {0, ..., m-1} independent of X.
LatticeDist smooth_uniform(const LatticeDist& dist, int m);

/// n-fold forward difference, (Δs)(k) = s(k+1) - s(k).
SignedSeq difference(const SignedSeq& s, int n);

/// n-fold span-m difference, (Δ_m s)(j) = s(j+m) - s(j).
SignedSeq span_difference(const SignedSeq& s, int n, int m);

enum class Norm { L1, L2, Linf };

/// Maps p in {1, 2, inf} to a Norm; anything else is InvalidParameter.
Norm norm_from_p(double p);

double seq_norm(const SignedSeq& s, Norm norm);
double seq_norm(const SignedSeq& s, double p);

SignedSeq operator-(const SignedSeq& a, const SignedSeq& b);

LatticeDist convolve(const LatticeDist& f, const LatticeDist& g);

/// Both pmfs laid out on their joint support hull [lo, lo + size).
struct AlignedPair {
  long lo = 0;
  Eigen::ArrayXd first;
  Eigen::ArrayXd second;
};
AlignedPair align(const LatticeDist& f, const LatticeDist& g);

}  // namespace lkllt
