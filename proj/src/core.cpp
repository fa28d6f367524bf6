#include "lkllt/core.hpp"

#include <Eigen/Dense>

#include <cstdlib>
#include <sstream>

namespace lkllt {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::DegenerateChain: return "DegenerateChain";
    case ErrorKind::MissingCapability: return "MissingCapability";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

std::uint64_t Rng::below(std::uint64_t n) {
  require(n > 0, ErrorKind::InvalidParameter, "Rng::below needs n > 0");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  for (;;) {
    const std::uint64_t x = engine_();
    if (x < limit) return x % n;
  }
}

long Rng::poisson(double mean) {
  require(mean >= 0.0 && std::isfinite(mean), ErrorKind::InvalidParameter,
          "Poisson mean must be finite and nonnegative");
  // Inversion needs exp(-mean) to stay well inside double range; sums of
  // independent Poissons are Poisson, so large means are split into chunks.
  constexpr double kChunk = 256.0;
  long total = 0;
  double remaining = mean;
  while (remaining > 0.0) {
    const double mu = std::min(remaining, kChunk);
    remaining -= mu;
    double prob = std::exp(-mu);
    double cdf = prob;
    const double u = uniform();
    long k = 0;
    while (u >= cdf) {
      ++k;
      prob *= mu / static_cast<double>(k);
      const double next = cdf + prob;
      if (next == cdf) break;  // tail exhausted at double precision
      cdf = next;
    }
    total += k;
  }
  return total;
}

Rng substream(std::uint64_t master, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(master) ^ splitmix64(index + 1)));
}

unsigned thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LKLLT_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorKind::InvalidParameter,
          "loglog_slope needs two equally sized series of length >= 2");
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd response(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    require(x[i] > 0 && y[i] > 0, ErrorKind::InvalidParameter,
            "loglog_slope needs positive data");
    design(i, 0) = 1.0;
    design(i, 1) = std::log(x[i]);
    response(i) = std::log(y[i]);
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(response);
  return coef(1);
}

std::vector<long> geometric_grid(long start, long stop, double factor) {
  require(start >= 1 && stop >= start, ErrorKind::InvalidParameter,
          "grid needs 1 <= start <= stop");
  require(factor > 1.0, ErrorKind::InvalidParameter, "grid factor must exceed 1");
  std::vector<long> grid;
  double value = static_cast<double>(start);
  while (std::lround(value) <= stop) {
    const long v = std::lround(value);
    if (grid.empty() || grid.back() != v) grid.push_back(v);
    value *= factor;
  }
  return grid;
}

std::vector<long> parse_grid(const std::string& spec) {
  const auto first = spec.find(':');
  if (first != std::string::npos) {
    const auto second = spec.find(':', first + 1);
    require(second != std::string::npos && second + 1 < spec.size() &&
                spec[second + 1] == 'x',
            ErrorKind::InvalidParameter, "grid spec must look like a:b:xk");
    try {
      const long a = std::stol(spec.substr(0, first));
      const long b = std::stol(spec.substr(first + 1, second - first - 1));
      const double k = std::stod(spec.substr(second + 2));
      return geometric_grid(a, b, k);
    } catch (const std::logic_error&) {
      fail(ErrorKind::InvalidParameter, "unparsable grid spec '" + spec + "'");
    }
  }
  std::vector<long> grid;
  std::stringstream stream(spec);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      grid.push_back(std::stol(item));
    } catch (const std::logic_error&) {
      fail(ErrorKind::InvalidParameter, "unparsable grid entry '" + item + "'");
    }
  }
  require(!grid.empty(), ErrorKind::InvalidParameter, "empty grid");
  return grid;
}

double binomial_coefficient(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (long i = 1; i <= k; ++i) {
    result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return result < 0x1p53 ? std::round(result) : result;
}

}  // namespace lkllt
