#include "lkllt/er.hpp"

#include <array>
#include <bit>
#include <limits>

#include "lkllt/tp.hpp"

namespace lkllt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pairs(double n) { return n * (n - 1.0) / 2.0; }
double choose2(long x) { return x < 2 ? 0.0 : 0.5 * static_cast<double>(x) * (x - 1); }

void check_probability(double p) {
  require(p >= 0.0 && p <= 1.0, ErrorKind::InvalidParameter, "edge probability must lie in [0, 1]");
}

// Calls f(i, j) for every present edge of a G(n, p) draw, in lexicographic
// pair order. Sparse draws jump between successes with geometric gaps.
template <class F>
void for_each_sampled_edge(int n, double p, Rng& rng, F&& f) {
  check_probability(p);
  if (p == 0.0 || n < 2) return;
  if (p >= 0.25) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng.bernoulli(p)) f(i, j);
      }
    }
    return;
  }
  const double log_q = std::log1p(-p);
  int i = 0;
  long j = 0;  // current column; starts one before the first pair (0, 1)
  for (;;) {
    const double gap = std::floor(std::log(rng.uniform_open_left()) / log_q);
    if (gap > 1e15) return;
    j += 1 + static_cast<long>(gap);
    while (j >= n) {
      if (i >= n - 2) return;
      j -= n;
      ++i;
      j += i + 1;
    }
    f(i, static_cast<int>(j));
  }
}

// Raises base to a nonnegative integer power, skipping the evaluation when
// the coefficient in front is zero (the exponent may then be negative).
double scaled_power(double coef, double base, long exponent) {
  if (coef == 0.0) return 0.0;
  require(exponent >= 0, ErrorKind::NumericalFailure, "negative exponent with nonzero weight");
  return coef * std::pow(base, static_cast<double>(exponent));
}

// coef * (1 - p)^exponent in log space.
double scaled_complement_power(double coef, double p, long exponent) {
  if (coef == 0.0) return 0.0;
  require(exponent >= 0, ErrorKind::NumericalFailure, "negative exponent with nonzero weight");
  if (exponent == 0) return coef;
  if (p == 1.0) return 0.0;
  return coef * std::exp(static_cast<double>(exponent) * std::log1p(-p));
}

}  // namespace

GraphState::GraphState(int n)
    : n_(n),
      words_(static_cast<std::size_t>((n + 63) / 64)),
      bits_(static_cast<std::size_t>(n) * words_, 0),
      degree_(static_cast<std::size_t>(n), 0) {
  require(n >= 1, ErrorKind::InvalidParameter, "graph needs n >= 1");
}

void GraphState::add_edge(int i, int j) {
  require(i != j && i >= 0 && j >= 0 && i < n_ && j < n_, ErrorKind::InvalidParameter,
          "edge endpoints must be distinct vertices");
  if (has_edge(i, j)) return;
  mutable_row(i)[j >> 6] |= std::uint64_t{1} << (j & 63);
  mutable_row(j)[i >> 6] |= std::uint64_t{1} << (i & 63);
  ++degree_[i];
  ++degree_[j];
  ++edges_;
}

void GraphState::remove_edge(int i, int j) {
  if (i == j || !has_edge(i, j)) return;
  mutable_row(i)[j >> 6] &= ~(std::uint64_t{1} << (j & 63));
  mutable_row(j)[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  --degree_[i];
  --degree_[j];
  --edges_;
}

int GraphState::common_neighbors(int i, int j) const {
  const auto a = row(i);
  const auto b = row(j);
  int count = 0;
  for (std::size_t w = 0; w < words_; ++w) count += std::popcount(a[w] & b[w]);
  return count;
}

GraphState gnp_sample(int n, double p, Rng& rng) {
  check_probability(p);
  GraphState g(n);
  for_each_sampled_edge(n, p, rng, [&](int i, int j) { g.add_edge(i, j); });
  return g;
}

GraphState gnp_sample(int n, double p, std::uint64_t seed) {
  Rng rng(splitmix64(seed));
  return gnp_sample(n, p, rng);
}

GraphStats graph_stats(const GraphState& g) {
  GraphStats s;
  long common = 0;
  for (int v = 0; v < g.n(); ++v) {
    const int d = g.degree(v);
    if (d == 0) ++s.w_isolated;
    if (d == 1) {
      ++s.w1;
      const auto row = g.row(v);
      int u = 0;
      for (std::size_t w = 0; w < row.size(); ++w) {
        if (row[w]) {
          u = static_cast<int>(w * 64 + std::countr_zero(row[w]));
          break;
        }
      }
      if (u > v && g.degree(u) == 1) ++s.e2;
    }
    for (int u = v + 1; u < g.n(); ++u) {
      if (g.has_edge(v, u)) common += g.common_neighbors(v, u);
    }
  }
  s.triangles = common / 3;
  return s;
}

const char* to_string(ErStatistic s) {
  return s == ErStatistic::Isolated ? "isolated" : "triangles";
}

ErStatistic parse_statistic(const std::string& name) {
  if (name == "isolated" || name == "iso") return ErStatistic::Isolated;
  if (name == "triangles" || name == "tri") return ErStatistic::Triangles;
  fail(ErrorKind::InvalidParameter, "unknown statistic '" + name + "'");
}

long statistic_value(const GraphState& g, ErStatistic s) {
  const GraphStats st = graph_stats(g);
  return s == ErStatistic::Isolated ? st.w_isolated : st.triangles;
}

IsoMoments iso_moments(int n, double p) {
  require(n >= 2, ErrorKind::InvalidParameter, "isolated-vertex moments need n >= 2");
  check_probability(p);
  const long nn = n;
  const double c2 = binomial_coefficient(nn, 2);
  const double c3 = binomial_coefficient(nn, 3);
  const double c4 = binomial_coefficient(nn, 4);
  const auto pw = [&](double coef, long k) { return scaled_complement_power(coef, p, k); };
  IsoMoments m;
  m.ew = pw(n, nn - 1);
  m.ew2 = m.ew + pw(2 * c2, 2 * nn - 3);
  m.ew3 = m.ew + pw(6 * c2, 2 * nn - 3) + pw(6 * c3, 3 * nn - 6);
  m.ew4 = m.ew + pw(14 * c2, 2 * nn - 3) + pw(36 * c3, 3 * nn - 6) + pw(24 * c4, 4 * nn - 10);
  m.ew1 = pw(2 * c2 * p, nn - 2);
  m.ee2 = pw(c2 * p, 2 * nn - 4);
  m.ew1_sq = m.ew1 + 2 * p * c2 *
                         (pw(1.0, 2 * nn - 4) +
                          pw(p * static_cast<double>((nn - 2) * (nn - 2)), 2 * nn - 5));
  m.ee2_sq = m.ee2 + pw(6 * c4 * p * p, 4 * nn - 12);
  m.ew1_e2 = m.ee2 * (pw(static_cast<double>((nn - 2) * (nn - 3)) * p, nn - 4) + 2.0);
  m.sigma2 = m.ew * (1.0 + pw(nn * p - 1.0, nn - 2));
  return m;
}

IsoQ iso_q(const GraphState& g, double p) {
  check_probability(p);
  require(g.n() >= 2, ErrorKind::InvalidParameter, "chain needs n >= 2");
  const GraphStats s = graph_stats(g);
  const long n = g.n();
  const double big_n = pairs(static_cast<double>(n));
  const double big_n2 = big_n * big_n;
  const long x = s.w1 - 2 * s.e2;
  const long w = s.w_isolated;
  IsoQ q;
  q.q1 = static_cast<double>(x) * (1 - p) / big_n;
  q.q_neg1 = static_cast<double>(w * (n - w)) * p / big_n;
  q.q2 = static_cast<double>(s.e2) * (1 - p) / big_n;
  q.q_neg2 = choose2(w) * p / big_n;
  q.q11 = 2 * choose2(x) * (1 - p) * (1 - p) / big_n2;
  q.q_neg1_neg1 = 4 * choose2(w) * choose2(n - w + 1) * p * p / big_n2;
  q.q22 = 2 * choose2(s.e2) * (1 - p) * (1 - p) / big_n2;
  q.q_neg2_neg2 = choose2(w) * choose2(w - 2) * p * p / big_n2;
  return q;
}

IsoBounds iso_smoothing_bounds(int n, double p) {
  const IsoMoments m = iso_moments(n, p);
  const double dn = n;
  const double x = m.ew1 - 2 * m.ee2;  // E(W1 - 2E2)
  const double y = dn * m.ew - m.ew2;  // E W(n - W)
  require(x > 0.0 && y > 0.0, ErrorKind::DegenerateChain, "q_1 is zero");
  const double r22 = (m.ew1_sq - 4 * m.ew1_e2 + 4 * m.ee2_sq - x * x) / (x * x);
  const double r23 = (m.ew4 - 2 * dn * m.ew3 + dn * dn * m.ew2 - y * y) / (y * y);
  IsoBounds b;
  b.d1 = std::sqrt(std::max(r22, 0.0)) + std::sqrt(std::max(r23, 0.0));
  b.d2 = 2 * r22 + (m.ew1 + 2 * m.ee2) / (x * x) + 2 * r23 + (dn + 1) / y;

  require(m.ee2 > 0.0 && p < 1.0, ErrorKind::DegenerateChain, "q_2 is zero");
  const double ec = 0.5 * (m.ew2 - m.ew);                   // E C(W,2)
  const double ec_sq = 0.25 * (m.ew4 - 2 * m.ew3 + m.ew2);  // E C(W,2)²
  const double r_plus = (m.ee2_sq - m.ee2 * m.ee2) / (m.ee2 * m.ee2);
  const double r_minus = (ec_sq - ec * ec) / (ec * ec);
  const double cubic = 0.5 * (2 * m.ew3 - 5 * m.ew2 + 3 * m.ew);  // E W(W-1)(2W-3)/2
  b.d12 = std::sqrt(std::max(r_plus, 0.0)) + std::sqrt(std::max(r_minus, 0.0));
  b.d22 = 2 * r_plus + 1.0 / m.ee2 + 2 * r_minus +
          p * p * cubic / (m.ee2 * m.ee2 * (1 - p) * (1 - p));
  return b;
}

TriClosedForms tri_closed_forms(int n, double p) {
  require(n >= 3, ErrorKind::InvalidParameter, "triangle closed forms need n >= 3");
  check_probability(p);
  const long nn = n;
  const double big_n = pairs(static_cast<double>(n));
  const double a = 1 - p * p;
  const double b = 1 - 2 * p * p + p * p * p;
  const double c = 1 + p - p * p;
  const double q = 1 - p;
  const double p2 = p * p, p3 = p2 * p, p4 = p3 * p, p5 = p4 * p, p6 = p5 * p, p8 = p6 * p2;
  const double k1 = static_cast<double>(nn - 2) / big_n;
  const double k2 = binomial_coefficient(nn - 2, 2) / big_n;
  const double k3 = binomial_coefficient(nn - 2, 3) / big_n;
  const double k4 = binomial_coefficient(nn - 2, 4) / big_n;
  const double poly = 4 * p3 - 7 * p4 + 4 * p6 - p8;
  const auto pw = [](double coef, double base, long e) { return scaled_power(coef, base, e); };

  TriClosedForms t;
  t.mu = binomial_coefficient(nn, 3) * p3;
  t.sigma2 = binomial_coefficient(nn, 3) * (p3 * (1 - p3) + 3.0 * (nn - 3) * p5 * q);
  t.q1 = pw(static_cast<double>(nn - 2) * p3 * q, a, nn - 3);

  // Terms whose combinatorial weight vanishes are skipped before any power
  // with a negative exponent is formed.
  const auto when = [](double weight, auto&& f) { return weight == 0.0 ? 0.0 : f(); };
  const double a_n3 = std::pow(a, static_cast<double>(nn - 3));
  const double qq = q * q;
  double v = 0.0;
  v += k1 * p4 * q * a_n3 * (1 - p2 * q * a_n3);
  v += when(k2, [&] {
    return 4 * k2 * p5 * qq * (pw(1.0, b, nn - 4) - pw(p, a, 2 * nn - 6)) +
           4 * k2 * p5 * qq * pw(1 - p - p * a * a, a, 2 * nn - 8);
  });
  v += when(k3, [&] {
    return 12 * k3 * p6 * qq * (pw(1.0, q, nn - 3) * pw(1.0, c, nn - 5) - pw(1.0, a, 2 * nn - 6)) +
           12 * k3 * p6 * qq * pw(-2 * p + 4 * p2 - 3 * p4 + p6, a, 2 * nn - 9) +
           3 * k3 * p6 * qq * pw(poly, a, 2 * nn - 10);
  });
  v += when(k4, [&] { return 12 * k4 * p6 * qq * pw(poly, a, 2 * nn - 10); });
  t.var_q1_bound = v;

  // Same structure with the edge-present indicator; the avoidance base is
  // 1 - 2p² + p³ throughout.
  double u = 0.0;
  u += k1 * p3 * qq * a_n3 * (1 - p3 * a_n3);
  u += 2 * k1 * p3 * qq * (pw(1.0, b, nn - 3) - pw(p3, a, 2 * nn - 6));
  u += when(k2, [&] {
    return 4 * k2 * p5 * qq * (q * pw(1.0, b, nn - 4) - pw(p, a, 2 * nn - 6)) +
           4 * k2 * p5 * qq * pw(1 - p - p * a * a, a, 2 * nn - 8);
  });
  u += when(k3, [&] {
    return 12 * k3 * p6 * qq * (q * qq * pw(1.0, b, nn - 5) - pw(1.0, a, 2 * nn - 6)) +
           12 * k3 * p6 * qq * pw(qq - a * a * a, a, 2 * nn - 9) +
           3 * k3 * p6 * qq * pw(poly, a, 2 * nn - 10);
  });
  u += when(k4, [&] { return 12 * k4 * p6 * qq * pw(poly, a, 2 * nn - 10); });
  t.var_qneg1_bound = u;

  t.ediff_plus = p * t.q1 / big_n;
  t.ediff_minus = q * t.q1 / big_n;
  if (t.q1 > 0.0) {
    t.d1_bound = (std::sqrt(std::max(v, 0.0)) + std::sqrt(std::max(u, 0.0))) / t.q1;
    t.d2_bound = (2 * v + t.ediff_plus + 2 * u + t.ediff_minus) / (t.q1 * t.q1);
  } else {
    t.d1_bound = t.d2_bound = kInf;
  }
  return t;
}

TriQ tri_q(const GraphState& g, double p) {
  check_probability(p);
  require(g.n() >= 3, ErrorKind::InvalidParameter, "triangle chain needs n >= 3");
  long add = 0;
  long remove = 0;
  for (int a = 0; a < g.n(); ++a) {
    for (int b = a + 1; b < g.n(); ++b) {
      if (g.common_neighbors(a, b) != 1) continue;
      (g.has_edge(a, b) ? remove : add) += 1;
    }
  }
  const double big_n = pairs(g.n());
  return {static_cast<double>(add) * p / big_n, static_cast<double>(remove) * (1 - p) / big_n};
}

long toggle_delta(const GraphState& g, int a, int b, ErStatistic s) {
  const bool present = g.has_edge(a, b);
  if (s == ErStatistic::Triangles) {
    const long c = g.common_neighbors(a, b);
    return present ? -c : c;
  }
  if (present) return (g.degree(a) == 1) + (g.degree(b) == 1);
  return -static_cast<long>((g.degree(a) == 0) + (g.degree(b) == 0));
}

double jump_probability(const GraphState& g, double p, ErStatistic s, int m) {
  check_probability(p);
  require(g.n() >= 2, ErrorKind::InvalidParameter, "chain needs n >= 2");
  if (m == 0) fail(ErrorKind::InvalidParameter, "jump size must be nonzero");
  CompensatedSum total;
  for (int a = 0; a < g.n(); ++a) {
    for (int b = a + 1; b < g.n(); ++b) {
      if (toggle_delta(g, a, b, s) == m) total.add(g.has_edge(a, b) ? 1 - p : p);
    }
  }
  return total.value() / pairs(g.n());
}

double two_step_probability(const GraphState& g, double p, ErStatistic s, int m) {
  check_probability(p);
  require(g.n() >= 2, ErrorKind::InvalidParameter, "chain needs n >= 2");
  if (m == 0) fail(ErrorKind::InvalidParameter, "jump size must be nonzero");
  GraphState h = g;
  CompensatedSum total;
  for (int a = 0; a < g.n(); ++a) {
    for (int b = a + 1; b < g.n(); ++b) {
      if (toggle_delta(g, a, b, s) != m) continue;
      const double first = g.has_edge(a, b) ? 1 - p : p;
      h.toggle(a, b);
      total.add(first * jump_probability(h, p, s, m));
      h.toggle(a, b);
    }
  }
  return total.value() / pairs(g.n());
}

ErdosRenyiPairModel::ErdosRenyiPairModel(int n, double p, ErStatistic statistic)
    : n_(n), p_(p), statistic_(statistic) {
  check_probability(p);
  require(n >= (statistic == ErStatistic::Triangles ? 3 : 2), ErrorKind::InvalidParameter,
          "graph too small for the chain");
}

JumpProbabilities ErdosRenyiPairModel::jumps(const State& g, int m) const {
  JumpProbabilities out;
  if (statistic_ == ErStatistic::Isolated && (m == 1 || m == 2)) {
    const IsoQ q = iso_q(g, p_);
    out.up = m == 1 ? q.q1 : q.q2;
    out.down = m == 1 ? q.q_neg1 : q.q_neg2;
  } else if (statistic_ == ErStatistic::Triangles && m == 1) {
    const TriQ q = tri_q(g, p_);
    out.up = q.q1;
    out.down = q.q_neg1;
  } else {
    out.up = jump_probability(g, p_, statistic_, m);
    out.down = jump_probability(g, p_, statistic_, -m);
  }
  out.up_up = two_step_probability(g, p_, statistic_, m);
  out.down_down = two_step_probability(g, p_, statistic_, -m);
  return out;
}

namespace {

constexpr int kMaxEnumerated = 7;

struct EdgeList {
  std::vector<std::array<int, 2>> pairs;
};

EdgeList all_pairs(int n) {
  EdgeList e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) e.pairs.push_back({i, j});
  }
  return e;
}

// Adjacency rows of the graph whose edge set is `mask` over `pairs`.
void rows_from_mask(std::uint32_t mask, const EdgeList& e, std::array<std::uint32_t, 8>& rows) {
  rows.fill(0);
  for (std::size_t b = 0; b < e.pairs.size(); ++b) {
    if ((mask >> b) & 1u) {
      rows[e.pairs[b][0]] |= 1u << e.pairs[b][1];
      rows[e.pairs[b][1]] |= 1u << e.pairs[b][0];
    }
  }
}

// Runs body(mask, rows, local) over all edge masks split into fixed chunks,
// each chunk accumulating into its own Local; returns the chunk results.
template <class Local, class Body>
std::vector<Local> enumerate_chunks(int n, const Local& init, Body&& body) {
  const EdgeList e = all_pairs(n);
  const std::uint64_t total = std::uint64_t{1} << e.pairs.size();
  const std::uint64_t chunks = std::min<std::uint64_t>(64, total);
  std::vector<Local> out(chunks, init);
  parallel_for(chunks, [&](std::size_t c) {
    std::array<std::uint32_t, 8> rows{};
    const std::uint64_t lo = total * c / chunks;
    const std::uint64_t hi = total * (c + 1) / chunks;
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      rows_from_mask(static_cast<std::uint32_t>(mask), e, rows);
      body(static_cast<std::uint32_t>(mask), rows, out[c]);
    }
  });
  return out;
}

// Probability of one specific graph with k edges out of total pairs.
std::vector<double> graph_weights(int total, double p) {
  std::vector<double> w(static_cast<std::size_t>(total + 1));
  for (int k = 0; k <= total; ++k) w[k] = std::pow(p, k) * std::pow(1 - p, total - k);
  return w;
}

void check_enumerable(int n, double p) {
  check_probability(p);
  require(n >= 1, ErrorKind::InvalidParameter, "graph needs n >= 1");
  require(n <= kMaxEnumerated, ErrorKind::TooLarge, "enumeration is limited to n <= 7");
}

}  // namespace

EnumeratedLaw enumerate_graphs_oracle(int n, double p, ErStatistic s) {
  check_enumerable(n, p);
  const int m = n * (n - 1) / 2;
  const long max_value = s == ErStatistic::Isolated ? n : static_cast<long>(binomial_coefficient(n, 3));
  // counts[value][edges] as exact integers.
  using Table = std::vector<std::vector<std::int64_t>>;
  const Table zero(static_cast<std::size_t>(max_value + 1),
                   std::vector<std::int64_t>(static_cast<std::size_t>(m + 1), 0));
  const auto parts = enumerate_chunks(n, zero, [&](std::uint32_t mask, const auto& rows, Table& t) {
    long value = 0;
    if (s == ErStatistic::Isolated) {
      for (int v = 0; v < n; ++v) value += rows[v] == 0;
    } else {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if ((rows[i] >> j) & 1u) value += std::popcount(rows[i] & rows[j] & ~((2u << j) - 1));
        }
      }
    }
    ++t[value][std::popcount(mask)];
  });
  const std::vector<double> weight = graph_weights(m, p);
  Eigen::ArrayXd pmf(max_value + 1);
  EnumeratedLaw out;
  CompensatedSum raw[4];
  for (long v = 0; v <= max_value; ++v) {
    CompensatedSum mass;
    for (int k = 0; k <= m; ++k) {
      std::int64_t count = 0;
      for (const Table& t : parts) count += t[v][k];
      if (count) mass.add(static_cast<double>(count) * weight[k]);
    }
    pmf(v) = mass.value();
    double power = 1.0;
    for (int r = 0; r < 4; ++r) {
      power *= static_cast<double>(v);
      raw[r].add(power * pmf(v));
    }
  }
  out.law = dist_from_weights(0, pmf);
  for (int r = 0; r < 4; ++r) out.moments[r] = raw[r].value();
  return out;
}

IsoMoments enumerate_iso_moments(int n, double p) {
  check_enumerable(n, p);
  require(n >= 2, ErrorKind::InvalidParameter, "isolated-vertex moments need n >= 2");
  const int m = n * (n - 1) / 2;
  constexpr int kFields = 9;  // W, W², W³, W⁴, W1, E2, W1², E2², W1 E2
  using Table = std::vector<std::array<std::int64_t, kFields>>;
  const Table zero(static_cast<std::size_t>(m + 1), std::array<std::int64_t, kFields>{});
  const auto parts = enumerate_chunks(n, zero, [&](std::uint32_t mask, const auto& rows, Table& t) {
    std::int64_t w = 0, w1 = 0, e2 = 0;
    for (int v = 0; v < n; ++v) {
      const int d = std::popcount(rows[v]);
      w += d == 0;
      if (d == 1) {
        ++w1;
        const int u = std::countr_zero(rows[v]);
        e2 += u > v && std::popcount(rows[u]) == 1;
      }
    }
    auto& row = t[std::popcount(mask)];
    row[0] += w;
    row[1] += w * w;
    row[2] += w * w * w;
    row[3] += w * w * w * w;
    row[4] += w1;
    row[5] += e2;
    row[6] += w1 * w1;
    row[7] += e2 * e2;
    row[8] += w1 * e2;
  });
  const std::vector<double> weight = graph_weights(m, p);
  double value[kFields];
  for (int f = 0; f < kFields; ++f) {
    CompensatedSum sum;
    for (int k = 0; k <= m; ++k) {
      std::int64_t total = 0;
      for (const Table& t : parts) total += t[k][f];
      if (total) sum.add(static_cast<double>(total) * weight[k]);
    }
    value[f] = sum.value();
  }
  IsoMoments out;
  out.ew = value[0];
  out.ew2 = value[1];
  out.ew3 = value[2];
  out.ew4 = value[3];
  out.ew1 = value[4];
  out.ee2 = value[5];
  out.ew1_sq = value[6];
  out.ee2_sq = value[7];
  out.ew1_e2 = value[8];
  out.sigma2 = out.ew2 - out.ew * out.ew;
  return out;
}

double ErRegime::p(long n) const {
  const double value = c * std::pow(static_cast<double>(n), -alpha);
  require(value >= 0.0 && value <= 1.0, ErrorKind::InvalidParameter,
          "regime gives an edge probability outside [0, 1]");
  return value;
}

namespace {

long sample_statistic(int n, double p, ErStatistic s, Rng& rng) {
  if (s == ErStatistic::Triangles) return graph_stats(gnp_sample(n, p, rng)).triangles;
  // Degrees suffice for isolated vertices; same draws as gnp_sample.
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for_each_sampled_edge(n, p, rng, [&](int i, int j) {
    ++degree[i];
    ++degree[j];
  });
  return static_cast<long>(std::count(degree.begin(), degree.end(), 0));
}

}  // namespace

RateTable er_rate_experiment(const ErRegime& regime, std::span<const long> n_grid,
                             long replicates, std::uint64_t seed) {
  require(replicates >= 1, ErrorKind::InvalidParameter, "replicates must be >= 1");
  require(!n_grid.empty(), ErrorKind::InvalidParameter, "empty n grid");
  const bool iso = regime.statistic == ErStatistic::Isolated;
  RateTable table;
  table.columns = {"n", "p", "mu", "sigma2", "dloc", "dloc2", "dtv", "dk",
                   "dloc_se", "dtv_se", "d1_bound", "d2_bound"};
  if (iso) {
    table.columns.push_back("d12_bound");
    table.columns.push_back("d22_bound");
  }
  table.metadata = {{"experiment", std::string("er ") + to_string(regime.statistic)},
                    {"c", format_number(regime.c)},
                    {"alpha", format_number(regime.alpha)},
                    {"replicates", std::to_string(replicates)},
                    {"seed", std::to_string(seed)},
                    {"target", "TP(mu_n, sigma_n^2) from closed forms"},
                    {"substreams", "replicate i at size n uses substream(seed, n * 2^32 + i)"}};

  for (long n : n_grid) {
    require(n >= 3 && n <= 1'000'000, ErrorKind::InvalidParameter, "grid sizes must lie in [3, 1e6]");
    const double p = regime.p(n);
    std::vector<long> values(static_cast<std::size_t>(replicates));
    parallel_for(values.size(), [&](std::size_t i) {
      Rng rng = substream(seed, (static_cast<std::uint64_t>(n) << 32) + i);
      values[i] = sample_statistic(static_cast<int>(n), p, regime.statistic, rng);
    });
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    Eigen::ArrayXd counts = Eigen::ArrayXd::Zero(*hi - *lo + 1);
    for (long v : values) counts(v - *lo) += 1.0;
    const LatticeDist empirical = dist_from_weights(*lo, counts);

    double mu = 0.0, sigma2 = 0.0;
    std::vector<double> bounds;
    if (iso) {
      const IsoMoments m = iso_moments(static_cast<int>(n), p);
      mu = m.ew;
      sigma2 = m.sigma2;
      const IsoBounds b = iso_smoothing_bounds(static_cast<int>(n), p);
      bounds = {b.d1, b.d2, b.d12, b.d22};
    } else {
      const TriClosedForms t = tri_closed_forms(static_cast<int>(n), p);
      mu = t.mu;
      sigma2 = t.sigma2;
      bounds = {t.d1_bound, t.d2_bound};
    }
    const LatticeDist target = tp_dist(tp_params(mu, sigma2));

    // Standard errors: binomial at the maximizing point for dloc, and the
    // linearization ½ Σ sign(p̂ - t) p̂ for dtv.
    const AlignedPair a = align(empirical, target);
    const double r = static_cast<double>(replicates);
    Eigen::Index arg = 0;
    (a.first - a.second).abs().maxCoeff(&arg);
    const double at = a.first(arg);
    const Eigen::ArrayXd sign = (a.first - a.second).sign();
    const double mean_sign = (sign * a.first).sum();
    const double var_sign = std::max(0.0, (sign.square() * a.first).sum() - mean_sign * mean_sign);

    std::vector<double> row = {static_cast<double>(n),
                               p,
                               mu,
                               sigma2,
                               local_distance(empirical, target, 1),
                               local_distance(empirical, target, 2),
                               total_variation_distance(empirical, target),
                               kolmogorov_distance(empirical, target),
                               std::sqrt(at * (1 - at) / r),
                               0.5 * std::sqrt(var_sign / r)};
    row.insert(row.end(), bounds.begin(), bounds.end());
    table.add_row(std::move(row));
  }
  table.sort_rows();
  return table;
}

}  // namespace lkllt
