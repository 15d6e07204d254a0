#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "mallows/distribution.hpp"
#include "mallows/errors.hpp"
#include "mallows/permutation.hpp"
#include "mallows/rng.hpp"
#include "mallows/sim/exact.hpp"

namespace mallows::sim {

// Joint cycle counts are compared on a truncated grid: each coordinate keeps
// the exact count up to this cap, and everything above lands in a single
// overflow bucket (coded cap + 1). At the parameters exercised here the
// Poisson mass above the cap is below 1e-7.
inline constexpr int poisson_cap = 10;

namespace detail {

// (C_1, .., C_b) truncated to the grid.
inline std::vector<int> truncated_cycle_key(const Permutation& p, int b) {
  const auto counts = cycle_counts(p);
  std::vector<int> key(static_cast<std::size_t>(b));
  for (int i = 1; i <= b; ++i) {
    const int c = counts[static_cast<std::size_t>(i)];
    key[static_cast<std::size_t>(i - 1)] = c > poisson_cap ? poisson_cap + 1 : c;
  }
  return key;
}

// pmf of the truncated Poisson(lambda): exact at c <= cap, tail mass at the
// overflow code.
inline double poisson_trunc_pmf(double lambda, int c) {
  double factorial = 1.0;
  if (c <= poisson_cap) {
    for (int k = 2; k <= c; ++k) factorial *= k;
    return std::exp(-lambda) * std::pow(lambda, c) / factorial;
  }
  double head = 0.0, term = std::exp(-lambda);
  for (int k = 0; k <= poisson_cap; ++k) {
    head += term;
    term *= lambda / (k + 1);
  }
  return head < 1.0 ? 1.0 - head : 0.0;
}

// Product over i of truncated Poisson(1/i) at the key's coordinates.
inline double poisson_product_pmf(const std::vector<int>& key) {
  double prob = 1.0;
  for (std::size_t i = 0; i < key.size(); ++i)
    prob *= poisson_trunc_pmf(1.0 / static_cast<double>(i + 1), key[i]);
  return prob;
}

// TV between a tallied law over keys and the Poisson product. Keys the tally
// never saw contribute their full product mass.
inline double tv_vs_poisson_product(const std::map<std::vector<int>, long long>& tally,
                                    long long total) {
  double tv = 0.0, seen = 0.0;
  for (const auto& [key, count] : tally) {
    const double empirical = static_cast<double>(count) / static_cast<double>(total);
    const double product = poisson_product_pmf(key);
    tv += std::abs(empirical - product);
    seen += product;
  }
  if (seen < 1.0) tv += 1.0 - seen;
  return tv / 2.0;
}

}  // namespace detail

// TV distance between the law of (C_1, .., C_b) under a uniform random
// permutation of [n] and the product of Poisson(1/i), both truncated to the
// capped grid. samples = 0 selects exact enumeration (subject to the n <= 8
// budget); otherwise a Monte Carlo estimate with per-sample derived seeds.
inline double poisson_cycle_distance(int n, int b, long long samples,
                                     std::uint64_t seed) {
  if (n < 0 || b < 0 || b > n)
    throw std::invalid_argument("poisson: need 0 <= b <= n");
  if (samples < 0) throw std::invalid_argument("poisson: negative sample count");
  std::map<std::vector<int>, long long> tally;
  long long total = 0;
  if (samples == 0) {
    detail::check_enumeration_budget(n);
    detail::for_each_sn(n, [&](const Permutation& p) {
      ++tally[detail::truncated_cycle_key(p, b)];
      ++total;
    });
  } else {
    const MallowsParams uniform{n, 1.0};
    for (long long s = 0; s < samples; ++s) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
      ++tally[detail::truncated_cycle_key(sample_mallows(uniform, rng), b)];
    }
    total = samples;
  }
  return detail::tv_vs_poisson_product(tally, total);
}

}  // namespace mallows::sim
