#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "mallows/distribution.hpp"
#include "mallows/logic/evaluate.hpp"
#include "mallows/logic/formula.hpp"
#include "mallows/rng.hpp"
#include "mallows/towers.hpp"

namespace mallows::sim {

// Maps a size n to the Mallows parameter q(n). The four regimes cover a
// fixed q, the 1 - c/n^4 and 1 - c/n scalings, and the band 1 +/- 1/log*(n).
struct QSchedule {
  enum class Kind { Fixed, OneMinusCOverN4, OneMinusCOverN, LogStarBand };

  Kind kind = Kind::Fixed;
  double param = 1.0;  // q, c, c, or the band sign

  static QSchedule fixed(double q) { return {Kind::Fixed, q}; }
  static QSchedule one_minus_c_over_n4(double c) {
    return {Kind::OneMinusCOverN4, c};
  }
  static QSchedule one_minus_c_over_n(double c) {
    return {Kind::OneMinusCOverN, c};
  }
  static QSchedule log_star_band(int sign) {
    if (sign != 1 && sign != -1)
      throw std::invalid_argument("schedule: sign must be +1 or -1");
    return {Kind::LogStarBand, static_cast<double>(sign)};
  }

  double q_at(int n) const {
    if (n < 1) throw std::invalid_argument("schedule: n must be >= 1");
    double q = 0.0;
    switch (kind) {
      case Kind::Fixed:
        q = param;
        break;
      case Kind::OneMinusCOverN4:
        q = 1.0 - param / (static_cast<double>(n) * n * n * n);
        break;
      case Kind::OneMinusCOverN:
        q = 1.0 - param / static_cast<double>(n);
        break;
      case Kind::LogStarBand: {
        const int stars = log_star(static_cast<long long>(n));
        if (stars == 0)
          throw std::invalid_argument("schedule: log* band needs n >= 2");
        q = 1.0 + param / static_cast<double>(stars);
        break;
      }
    }
    if (!(q > 0.0)) throw std::invalid_argument("schedule: q must be positive");
    return q;
  }
};

struct ExperimentConfig {
  logic::FormulaPtr sentence;
  QSchedule schedule;
  std::vector<int> sizes;
  long long samples = 1;
  std::uint64_t seed = 0;
  int workers = 1;
};

// Normal-approximation interval: half_width_95 = 1.96 sqrt(p_hat(1-p_hat)/S).
struct SatEstimate {
  double p_hat = 0.0;
  double half_width_95 = 0.0;
  long long samples = 0;
};

namespace detail {

// Satisfying-sample count for one size. Sample j always draws from an Rng
// seeded by derive_seed(seed, first_index + j), so any split of the range
// across workers tallies the same set of draws; the reduction is an integer
// sum, so results are bit-identical for every worker count.
inline long long count_satisfied(const logic::FormulaPtr& sentence, int n,
                                 double q, long long samples,
                                 std::uint64_t seed, std::uint64_t first_index,
                                 int workers) {
  std::vector<long long> hits(static_cast<std::size_t>(workers), 0);
  const long long chunk = (samples + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    const long long lo = w * chunk;
    const long long hi = lo + chunk < samples ? lo + chunk : samples;
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi, w] {
      const MallowsParams params{n, q};
      long long local = 0;
      for (long long j = lo; j < hi; ++j) {
        Rng rng(derive_seed(seed, first_index + static_cast<std::uint64_t>(j)));
        logic::MemoEvaluator ev(sample_mallows(params, rng));
        if (ev(sentence)) ++local;
      }
      hits[static_cast<std::size_t>(w)] = local;
    });
  }
  for (auto& t : pool) t.join();
  long long total = 0;
  for (long long h : hits) total += h;
  return total;
}

}  // namespace detail

// Monte Carlo estimate of P(Pi |= sentence) at every size in the config,
// in order. Deterministic given (config contents, seed) regardless of the
// worker count.
inline std::vector<SatEstimate> estimate_sat_prob(const ExperimentConfig& cfg) {
  if (!cfg.sentence) throw std::invalid_argument("experiment: sentence required");
  if (cfg.sizes.empty())
    throw std::invalid_argument("experiment: sizes must be nonempty");
  if (cfg.samples < 1)
    throw std::invalid_argument("experiment: samples must be >= 1");
  if (cfg.workers < 1)
    throw std::invalid_argument("experiment: workers must be >= 1");
  std::vector<SatEstimate> out;
  out.reserve(cfg.sizes.size());
  for (std::size_t i = 0; i < cfg.sizes.size(); ++i) {
    const int n = cfg.sizes[i];
    const double q = cfg.schedule.q_at(n);
    const auto first = static_cast<std::uint64_t>(i) *
                       static_cast<std::uint64_t>(cfg.samples);
    const long long hits = detail::count_satisfied(
        cfg.sentence, n, q, cfg.samples, cfg.seed, first, cfg.workers);
    const double p = static_cast<double>(hits) / static_cast<double>(cfg.samples);
    const double hw =
        1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.samples));
    out.push_back(SatEstimate{p, hw, cfg.samples});
  }
  return out;
}

// Checks the empirical mean of |Pi(1) - 1| against the displacement bound
// min(2q/(1-q), n-1), padded by three standard errors of the mean.
inline bool displacement_bound_check(int n, double q, long long samples,
                                     std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("displacement: n must be >= 1");
  if (!(q > 0.0) || !(q < 1.0))
    throw std::invalid_argument("displacement: q must be in (0,1)");
  if (samples < 1)
    throw std::invalid_argument("displacement: samples must be >= 1");
  const MallowsParams params{n, q};
  double sum = 0.0, sumsq = 0.0;
  for (long long s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    const Permutation p = sample_mallows(params, rng);
    const double x = std::abs(static_cast<double>(p(1) - 1));
    sum += x;
    sumsq += x * x;
  }
  const auto count = static_cast<double>(samples);
  const double mean = sum / count;
  double variance = 0.0;
  if (samples > 1) {
    variance = (sumsq - count * mean * mean) / (count - 1.0);
    if (variance < 0.0) variance = 0.0;
  }
  const double se = std::sqrt(variance / count);
  const double bound =
      std::min(2.0 * q / (1.0 - q), static_cast<double>(n - 1));
  return mean <= bound + 3.0 * se;
}

}  // namespace mallows::sim
