#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mallows/permutation.hpp"
#include "mallows/rng.hpp"

namespace mallows {

struct MallowsParams {
  int n = 0;
  double q = 1.0;
};

namespace detail {

inline void check_q(double q) {
  if (!(q > 0.0)) throw std::invalid_argument("q must be positive");
}

// 1 + q + ... + q^(i-1), the i-th factor of the normalizing product. Summing
// term by term sidesteps the (1-q^i)/(1-q) cancellation near q = 1.
inline double geometric_partial_sum(double q, int i) {
  double sum = 0.0, term = 1.0;
  for (int e = 0; e < i; ++e) {
    sum += term;
    term *= q;
  }
  return sum;
}

}  // namespace detail

// Z(n,q) = sum over S_n of q^inversions. The q = 1 case is exactly n!; no
// limit-taking or epsilon snapping happens anywhere.
inline double normalizing_constant(int n, double q) {
  if (n < 0) throw std::invalid_argument("normalizing_constant: negative n");
  detail::check_q(q);
  double z = 1.0;
  for (int i = 1; i <= n; ++i)
    z *= (q == 1.0) ? static_cast<double>(i) : detail::geometric_partial_sum(q, i);
  return z;
}

inline mpq_class normalizing_constant_rational(int n, const mpq_class& q) {
  if (n < 0) throw std::invalid_argument("normalizing_constant: negative n");
  if (q <= 0) throw std::invalid_argument("q must be positive");
  mpq_class z = 1;
  for (int i = 1; i <= n; ++i) {
    mpq_class factor = 0, term = 1;
    for (int e = 0; e < i; ++e) {
      factor += term;
      term *= q;
    }
    z *= factor;
  }
  return z;
}

inline double mallows_pmf(const Permutation& p, double q) {
  detail::check_q(q);
  return std::pow(q, static_cast<double>(inversions(p))) /
         normalizing_constant(p.size(), q);
}

inline mpq_class mallows_pmf_rational(const Permutation& p, const mpq_class& q) {
  mpq_class num = 1;
  for (long long i = 0; i < inversions(p); ++i) num *= q;
  return num / normalizing_constant_rational(p.size(), q);
}

// Truncated geometric on {1..m}: pmf(k) proportional to (1-p)^(k-1).
// Valid for p < 1, p != 0; p in (0,1) decays, p < 0 grows. p = 0 would be
// the uniform law, which callers get from the dedicated uniform branch.
inline double tgeo_pmf(int m, double p, int k) {
  if (m < 1) throw std::invalid_argument("tgeo: m must be >= 1");
  if (p == 0.0) throw std::invalid_argument("use uniform branch");
  if (p >= 1.0) throw std::invalid_argument("tgeo: p must be < 1");
  if (k < 1 || k > m) return 0.0;
  const double q = 1.0 - p;
  // p / (1 - q^m) without cancellation: 1 - q^m = p * (1 + q + ... + q^(m-1))
  return std::pow(q, k - 1) / detail::geometric_partial_sum(q, m);
}

inline mpq_class tgeo_pmf_rational(int m, const mpq_class& p, int k) {
  if (m < 1) throw std::invalid_argument("tgeo: m must be >= 1");
  if (p == 0) throw std::invalid_argument("use uniform branch");
  if (p >= 1) throw std::invalid_argument("tgeo: p must be < 1");
  if (k < 1 || k > m) return 0;
  const mpq_class q = 1 - p;
  mpq_class num = 1, den = 0, term = 1;
  for (int e = 0; e < m; ++e) {
    den += term;
    term *= q;
  }
  for (int e = 0; e < k - 1; ++e) num *= q;
  return num / den;
}

// Inverse-CDF draw from the truncated geometric. Stable for q on either side
// of 1, including q^m far outside double range.
inline int sample_truncated_geometric(int m, double p, Rng& rng) {
  if (m < 1) throw std::invalid_argument("tgeo: m must be >= 1");
  if (p == 0.0) throw std::invalid_argument("use uniform branch");
  if (p >= 1.0) throw std::invalid_argument("tgeo: p must be < 1");
  const double q = 1.0 - p;
  const double u = rng.uniform();
  double k;
  if (q < 1.0) {
    // CDF(k) = (1-q^k)/(1-q^m) >= u  <=>  k >= log(1 - u(1-q^m)) / log q
    const double scale = -std::expm1(static_cast<double>(m) * std::log(q));
    k = std::ceil(std::log1p(-u * scale) / std::log(q));
  } else {
    // CDF(k) = (q^k-1)/(q^m-1) >= u  <=>  k >= log(1 + u(q^m-1)) / log q
    const double logq = std::log(q);
    const double ml = static_cast<double>(m) * logq;
    if (ml > 600.0) {
      // q^m overflows; log(1 + u(e^ml - 1)) == ml + log u + log1p(...)
      const double t = (u > 0.0)
                           ? ml + std::log(u) + std::log1p((1.0 - u) / u * std::exp(-ml))
                           : 0.0;
      k = std::ceil(t / logq);
    } else {
      k = std::ceil(std::log1p(u * std::expm1(ml)) / logq);
    }
  }
  if (!(k >= 1.0)) return 1;
  if (k > static_cast<double>(m)) return m;
  return static_cast<int>(k);
}

namespace detail {

// Fenwick tree over [1..n] supporting "select the k-th remaining slot" in
// O(log n); backs the insertion sampler.
class FenwickSelect {
 public:
  explicit FenwickSelect(int n) : n_(n), tree_(static_cast<std::size_t>(n) + 1, 0) {
    for (int i = 1; i <= n; ++i) {
      tree_[static_cast<std::size_t>(i)] += 1;
      const int parent = i + (i & -i);
      if (parent <= n) tree_[static_cast<std::size_t>(parent)] +=
          tree_[static_cast<std::size_t>(i)];
    }
    log2_ = 0;
    while ((1 << (log2_ + 1)) <= n) ++log2_;
  }

  // k-th smallest value still present (1-based), removing it.
  int take(int k) {
    int pos = 0;
    for (int step = 1 << log2_; step > 0; step >>= 1) {
      const int next = pos + step;
      if (next <= n_ && tree_[static_cast<std::size_t>(next)] < k) {
        pos = next;
        k -= tree_[static_cast<std::size_t>(pos)];
      }
    }
    const int value = pos + 1;
    for (int i = value; i <= n_; i += i & -i) tree_[static_cast<std::size_t>(i)] -= 1;
    return value;
  }

 private:
  int n_;
  int log2_ = 0;
  std::vector<int> tree_;
};

}  // namespace detail

// Draw from Mallows(n, q). q = 1 is a plain Fisher-Yates shuffle; otherwise
// position i receives the Z-th smallest unused value, Z ~ TGeo(n-i+1, 1-q).
inline Permutation sample_mallows(const MallowsParams& params, Rng& rng) {
  const int n = params.n;
  const double q = params.q;
  if (n < 0) throw std::invalid_argument("sample_mallows: negative n");
  detail::check_q(q);
  std::vector<int> out(static_cast<std::size_t>(n));
  if (q == 1.0) {
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = i + 1;
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(i) + 1)) - 1;
      std::swap(out[static_cast<std::size_t>(i)], out[static_cast<std::size_t>(j)]);
    }
    return Permutation::trusted(std::move(out));
  }
  detail::FenwickSelect remaining(n);
  for (int i = 1; i <= n; ++i) {
    const int z = sample_truncated_geometric(n - i + 1, 1.0 - q, rng);
    out[static_cast<std::size_t>(i - 1)] = remaining.take(z);
  }
  return Permutation::trusted(std::move(out));
}

}  // namespace mallows
