#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mallows/distribution.hpp"
#include "mallows/errors.hpp"
#include "mallows/logic/evaluate.hpp"
#include "mallows/logic/formula.hpp"
#include "mallows/permutation.hpp"

namespace mallows::sim {

// Every exhaustive engine in this module enumerates S_n; past n = 8 the
// 40320-permutation sweep stops being "seconds" and the call is refused.
inline constexpr int enumeration_limit = 8;

namespace detail {

inline void check_enumeration_budget(int n) {
  if (n < 0) throw std::invalid_argument("exact: negative n");
  if (n > enumeration_limit) throw budget_error("budget");
}

// Visits all of S_n in lexicographic one-line order (just the identity for
// n = 0).
template <typename Fn>
void for_each_sn(int n, Fn&& fn) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  do {
    fn(Permutation::trusted(std::vector<int>(v)));
  } while (std::next_permutation(v.begin(), v.end()));
}

}  // namespace detail

// P(Pi |= sentence) under Mallows(n, q), by full enumeration. The sentence
// must be closed; a free variable surfaces as the evaluator's unbound-name
// error.
inline double exact_sat_prob(const logic::FormulaPtr& sentence, int n, double q) {
  if (!sentence) throw std::invalid_argument("exact: null sentence");
  detail::check_enumeration_budget(n);
  const double z = normalizing_constant(n, q);
  double total = 0.0;
  detail::for_each_sn(n, [&](const Permutation& p) {
    logic::MemoEvaluator ev(p);
    if (ev(sentence))
      total += std::pow(q, static_cast<double>(inversions(p))) / z;
  });
  return total;
}

// Same sum in exact rational arithmetic.
inline mpq_class exact_sat_prob_rational(const logic::FormulaPtr& sentence,
                                         int n, const mpq_class& q) {
  if (!sentence) throw std::invalid_argument("exact: null sentence");
  detail::check_enumeration_budget(n);
  mpq_class total = 0;
  detail::for_each_sn(n, [&](const Permutation& p) {
    logic::MemoEvaluator ev(p);
    if (ev(sentence)) total += mallows_pmf_rational(p, q);
  });
  return total;
}

// Total-variation distance between Mallows(n, q1) and Mallows(n, q2):
// (1/2) sum over S_n of |pmf1 - pmf2|.
inline double tv_exact_mallows(int n, double q1, double q2) {
  detail::check_enumeration_budget(n);
  const double z1 = normalizing_constant(n, q1);
  const double z2 = normalizing_constant(n, q2);
  double sum = 0.0;
  detail::for_each_sn(n, [&](const Permutation& p) {
    const auto inv = static_cast<double>(inversions(p));
    sum += std::abs(std::pow(q1, inv) / z1 - std::pow(q2, inv) / z2);
  });
  return sum / 2.0;
}

// Total-variation distance between TGeo(m, 1-q) and Uniform({1..m}) by
// direct summation. q = 1 is the uniform branch itself, so the distance is
// zero by convention rather than an error.
inline double tv_tgeo_uniform(int m, double q) {
  if (m < 1) throw std::invalid_argument("tgeo: m must be >= 1");
  if (!(q > 0.0)) throw std::invalid_argument("q must be positive");
  if (q == 1.0) return 0.0;
  const double uniform = 1.0 / static_cast<double>(m);
  double sum = 0.0;
  for (int k = 1; k <= m; ++k)
    sum += std::abs(tgeo_pmf(m, 1.0 - q, k) - uniform);
  return sum / 2.0;
}

}  // namespace mallows::sim
