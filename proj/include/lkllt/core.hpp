#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace lkllt {

enum class ErrorKind {
  InvalidDistribution,
  InvalidParameter,
  DegenerateChain,
  MissingCapability,
  NumericalFailure,
  TooLarge,
};

const char* to_string(ErrorKind kind);

/// Every failure surfaced by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool condition, ErrorKind kind, const char* what) {
  if (!condition) fail(kind, what);
}

/// SplitMix64 finalizer; used to derive independent engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Random source used by every sampler. Wraps std::mt19937_64 and converts
/// raw bits to doubles itself, so streams are identical on every platform
/// (the std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on (0, 1].
  double uniform_open_left() { return 1.0 - uniform(); }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n);
  double exponential() { return -std::log(uniform_open_left()); }
  /// Poisson(mean) by sequential inversion, split into chunks for large means.
  long poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

/// Replicate `index` of a run with master seed `master` draws from its own
/// engine seeded with splitmix64(splitmix64(master) ^ splitmix64(index + 1)).
/// A replicate's draws therefore do not depend on how many replicates run.
Rng substream(std::uint64_t master, std::uint64_t index);

/// Worker count: hardware concurrency capped by LKLLT_THREADS when set.
unsigned thread_count();

/// Runs body(i) for i in [0, count) on thread_count() workers. Each index must
/// write only its own output slot; reductions happen afterwards in index order.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
}

/// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double compensated_sum(std::span<const double> xs);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Geometric grid a, a*k, a*k^2, ... up to and including b (within rounding).
std::vector<long> geometric_grid(long start, long stop, double factor);

/// Parses "a:b:xk" (geometric) or a comma-separated list.
std::vector<long> parse_grid(const std::string& spec);

double binomial_coefficient(long n, long k);

}  // namespace lkllt
