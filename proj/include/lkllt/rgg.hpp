#pragma once

#include <Eigen/Core>

#include <span>

#include "lkllt/report.hpp"
#include "lkllt/lattice.hpp"

namespace lkllt {

/// Points of [0,1]^d stored column-wise (d x count).
struct PointSet {
  int d = 1;
  Eigen::MatrixXd points;

  long size() const { return static_cast<long>(points.cols()); }
};

/// Homogeneous Poisson process of intensity lambda on the unit cube.
PointSet ppp_sample(double lambda, int d, Rng& rng);
PointSet ppp_sample(double lambda, int d, std::uint64_t seed);

/// Independence number of the graph joining points at distance <= r.
/// d = 1 uses a sorted greedy scan; d >= 2 an exact branch and bound that
/// gives up with TooLarge after 10^6 search nodes.
long rgg_independence(const PointSet& points, double r);

/// Block construction around a grid of disjoint balls of radius 3ρ
/// (ρ = r/2): the fraction of balls whose annulus B_{2ρ} \ B_ρ holds no point,
/// and among those the fraction whose core B_ρ is occupied.
struct AnnulusCount {
  long balls = 0;
  long empty_annuli = 0;
  long occupied_cores = 0;
};
AnnulusCount annulus_diagnostic(const PointSet& points, double r);

/// Empirical law of the independence number at r = b λ^{-1/d} per λ,
/// compared with TP(empirical mean, empirical variance).
RateTable rgg_experiment(double b, int d, std::span<const long> lambda_grid, long replicates,
                         std::uint64_t seed);

}  // namespace lkllt
