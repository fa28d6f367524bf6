#include "lkllt/rgg.hpp"

#include <bit>
#include <numeric>

#include "lkllt/metrics.hpp"
#include "lkllt/tp.hpp"

namespace lkllt {
namespace {

using Bits = std::vector<std::uint64_t>;

struct Bitset {
  std::size_t words = 0;

  Bits make() const { return Bits(words, 0); }
  static bool test(const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1u; }
  static void set(Bits& b, int i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }
  static void reset(Bits& b, int i) { b[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  static int count(const Bits& b) {
    int c = 0;
    for (auto w : b) c += std::popcount(w);
    return c;
  }
  static int count_and(const Bits& a, const Bits& b) {
    int c = 0;
    for (std::size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
    return c;
  }
  template <class F>
  static void for_each(const Bits& b, F&& f) {
    for (std::size_t w = 0; w < b.size(); ++w) {
      for (std::uint64_t x = b[w]; x; x &= x - 1) f(static_cast<int>(w * 64 + std::countr_zero(x)));
    }
  }
};

class MaxIndependentSet {
 public:
  MaxIndependentSet(std::vector<Bits> adj, std::size_t words) : adj_(std::move(adj)), bits_{words} {}

  long solve() {
    Bits all = bits_.make();
    for (int v = 0; v < static_cast<int>(adj_.size()); ++v) Bitset::set(all, v);
    search(all, 0);
    return best_;
  }

 private:
  static constexpr long kBudget = 1'000'000;

  // Greedy partition of the candidates into cliques; each clique holds at
  // most one vertex of an independent set.
  int clique_cover(const Bits& cand) const {
    std::vector<Bits> common;  // intersection of neighborhoods per clique
    Bitset::for_each(cand, [&](int v) {
      for (Bits& c : common) {
        if (Bitset::test(c, v)) {
          for (std::size_t w = 0; w < c.size(); ++w) c[w] &= adj_[v][w];
          return;
        }
      }
      common.push_back(adj_[v]);
    });
    return static_cast<int>(common.size());
  }

  void take(Bits& cand, int v) const {
    for (std::size_t w = 0; w < cand.size(); ++w) cand[w] &= ~adj_[v][w];
    Bitset::reset(cand, v);
  }

  void search(Bits cand, long size) {
    if (++nodes_ > kBudget) fail(ErrorKind::TooLarge, "independence search exceeded 1e6 nodes");
    // Vertices of degree <= 1 among the candidates belong to some maximum
    // independent set.
    for (bool changed = true; changed;) {
      changed = false;
      Bitset::for_each(cand, [&](int v) {
        if (!Bitset::test(cand, v)) return;
        if (Bitset::count_and(cand, adj_[v]) <= 1) {
          take(cand, v);
          ++size;
          changed = true;
        }
      });
    }
    if (Bitset::count(cand) == 0) {
      best_ = std::max(best_, size);
      return;
    }
    if (size + clique_cover(cand) <= best_) return;
    int pivot = -1;
    int degree = -1;
    Bitset::for_each(cand, [&](int v) {
      const int d = Bitset::count_and(cand, adj_[v]);
      if (d > degree) {
        degree = d;
        pivot = v;
      }
    });
    Bits with = cand;
    take(with, pivot);
    search(std::move(with), size + 1);
    Bitset::reset(cand, pivot);
    search(std::move(cand), size);
  }

  std::vector<Bits> adj_;
  Bitset bits_;
  long best_ = 0;
  long nodes_ = 0;
};

}  // namespace

PointSet ppp_sample(double lambda, int d, Rng& rng) {
  require(lambda > 0.0 && std::isfinite(lambda), ErrorKind::InvalidParameter,
          "intensity must be positive");
  require(d >= 1, ErrorKind::InvalidParameter, "dimension must be >= 1");
  const long count = rng.poisson(lambda);
  PointSet out;
  out.d = d;
  out.points.resize(d, count);
  for (long j = 0; j < count; ++j) {
    for (int i = 0; i < d; ++i) out.points(i, j) = rng.uniform();
  }
  return out;
}

PointSet ppp_sample(double lambda, int d, std::uint64_t seed) {
  Rng rng(splitmix64(seed));
  return ppp_sample(lambda, d, rng);
}

long rgg_independence(const PointSet& points, double r) {
  require(r >= 0.0, ErrorKind::InvalidParameter, "radius must be >= 0");
  const long count = points.size();
  if (count == 0) return 0;
  if (points.d == 1) {
    std::vector<double> x(points.points.data(), points.points.data() + count);
    std::sort(x.begin(), x.end());
    long chosen = 1;
    double last = x.front();
    for (double v : x) {
      if (v - last > r) {
        ++chosen;
        last = v;
      }
    }
    return chosen;
  }
  const std::size_t words = static_cast<std::size_t>((count + 63) / 64);
  std::vector<Bits> adj(static_cast<std::size_t>(count), Bits(words, 0));
  const double r2 = r * r;
  for (long i = 0; i < count; ++i) {
    for (long j = i + 1; j < count; ++j) {
      if ((points.points.col(i) - points.points.col(j)).squaredNorm() <= r2) {
        Bitset::set(adj[i], static_cast<int>(j));
        Bitset::set(adj[j], static_cast<int>(i));
      }
    }
  }
  return MaxIndependentSet(std::move(adj), words).solve();
}

AnnulusCount annulus_diagnostic(const PointSet& points, double r) {
  require(r > 0.0, ErrorKind::InvalidParameter, "radius must be positive");
  const double rho = r / 2.0;
  const long per_axis = static_cast<long>(std::floor(1.0 / (6.0 * rho)));
  AnnulusCount out;
  if (per_axis < 1) return out;
  long balls = 1;
  for (int i = 0; i < points.d; ++i) balls *= per_axis;
  out.balls = balls;
  std::vector<int> core(static_cast<std::size_t>(balls), 0);
  std::vector<int> ring(static_cast<std::size_t>(balls), 0);
  const double spacing = 6.0 * rho;
  for (long j = 0; j < points.size(); ++j) {
    // Nearest ball center along each axis.
    long index = 0;
    Eigen::VectorXd offset(points.d);
    bool inside = true;
    for (int i = points.d - 1; i >= 0; --i) {
      const long cell = static_cast<long>(std::floor(points.points(i, j) / spacing));
      if (cell >= per_axis) {
        inside = false;
        break;
      }
      offset(i) = points.points(i, j) - (cell + 0.5) * spacing;
      index = index * per_axis + cell;
    }
    if (!inside) continue;
    const double dist = offset.norm();
    if (dist <= rho) ++core[index];
    else if (dist <= 2.0 * rho) ++ring[index];
  }
  for (long k = 0; k < balls; ++k) {
    if (ring[k] == 0) {
      ++out.empty_annuli;
      if (core[k] > 0) ++out.occupied_cores;
    }
  }
  return out;
}

RateTable rgg_experiment(double b, int d, std::span<const long> lambda_grid, long replicates,
                         std::uint64_t seed) {
  require(b > 0.0, ErrorKind::InvalidParameter, "b must be positive");
  require(d >= 1, ErrorKind::InvalidParameter, "dimension must be >= 1");
  require(replicates >= 2, ErrorKind::InvalidParameter, "replicates must be >= 2");
  require(!lambda_grid.empty(), ErrorKind::InvalidParameter, "empty lambda grid");
  RateTable table;
  table.columns = {"lambda", "r", "mean", "var", "var_over_lambda", "dloc", "dtv", "dk",
                   "dloc_se", "dtv_se", "empty_annulus_fraction", "occupied_core_fraction"};
  table.metadata = {{"experiment", "rgg"},
                    {"b", format_number(b)},
                    {"d", std::to_string(d)},
                    {"replicates", std::to_string(replicates)},
                    {"seed", std::to_string(seed)},
                    {"target", "TP(empirical mean, empirical variance)"},
                    {"b_regime", "small-b regime assumed, not checked"},
                    {"substreams", "replicate i at intensity lambda uses substream(seed, lambda * 2^32 + i)"}};
  for (long lambda : lambda_grid) {
    require(lambda >= 1, ErrorKind::InvalidParameter, "intensities must be >= 1");
    const double r = b * std::pow(static_cast<double>(lambda), -1.0 / d);
    std::vector<long> values(static_cast<std::size_t>(replicates));
    std::vector<AnnulusCount> blocks(values.size());
    parallel_for(values.size(), [&](std::size_t i) {
      Rng rng = substream(seed, (static_cast<std::uint64_t>(lambda) << 32) + i);
      const PointSet pts = ppp_sample(static_cast<double>(lambda), d, rng);
      values[i] = rgg_independence(pts, r);
      blocks[i] = annulus_diagnostic(pts, r);
    });
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    Eigen::ArrayXd counts = Eigen::ArrayXd::Zero(*hi - *lo + 1);
    for (long v : values) counts(v - *lo) += 1.0;
    const LatticeDist empirical = dist_from_weights(*lo, counts);
    const double mean = empirical.mean();
    const double var = empirical.variance() * replicates / (replicates - 1.0);
    double dloc = 0.0, dtv = 0.0, dk = 0.0, dloc_se = 0.0, dtv_se = 0.0;
    if (var > 0.0) {
      const LatticeDist target = tp_dist(tp_params(mean, var));
      const AlignedPair a = align(empirical, target);
      Eigen::Index arg = 0;
      (a.first - a.second).abs().maxCoeff(&arg);
      const double at = a.first(arg);
      const Eigen::ArrayXd sign = (a.first - a.second).sign();
      const double mean_sign = (sign * a.first).sum();
      const double var_sign = std::max(0.0, (sign.square() * a.first).sum() - mean_sign * mean_sign);
      dloc = local_distance(empirical, target);
      dtv = total_variation_distance(empirical, target);
      dk = kolmogorov_distance(empirical, target);
      dloc_se = std::sqrt(at * (1 - at) / replicates);
      dtv_se = 0.5 * std::sqrt(var_sign / replicates);
    }
    long balls = 0, empty = 0, occupied = 0;
    for (const AnnulusCount& c : blocks) {
      balls += c.balls;
      empty += c.empty_annuli;
      occupied += c.occupied_cores;
    }
    const double empty_fraction = balls ? static_cast<double>(empty) / balls : 0.0;
    const double core_fraction = empty ? static_cast<double>(occupied) / empty : 0.0;
    table.add_row({static_cast<double>(lambda), r, mean, var, var / lambda, dloc, dtv, dk,
                   dloc_se, dtv_se, empty_fraction, core_fraction});
  }
  table.sort_rows();
  return table;
}

}  // namespace lkllt
