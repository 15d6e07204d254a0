#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mallows/permutation.hpp"
#include "mallows/rng.hpp"

namespace mallows {

namespace detail {

// Book-keeping for "the z-th smallest natural number not used yet": a sorted
// list of unused values below `frontier`, plus the rule that everything at or
// above `frontier` is unused.
struct NaturalPool {
  std::vector<int> holes;
  int frontier = 1;

  int take(long long z) {
    const long long hole_count = static_cast<long long>(holes.size());
    if (z <= hole_count) {
      const int v = holes[static_cast<std::size_t>(z - 1)];
      holes.erase(holes.begin() + static_cast<std::ptrdiff_t>(z - 1));
      return v;
    }
    const long long v = frontier + (z - hole_count - 1);
    for (int w = frontier; w < v; ++w) holes.push_back(w);  // stays sorted
    frontier = static_cast<int>(v) + 1;
    return static_cast<int>(v);
  }
};

}  // namespace detail

// Geometric on {1, 2, ...} with success probability 1-q, by inverse CDF.
inline long long sample_geometric(double q, Rng& rng) {
  const double u = rng.uniform();
  const double k = std::ceil(std::log1p(-u) / std::log(q));
  return k >= 1.0 ? static_cast<long long>(k) : 1;
}

// The one-sided insertion process: value at step i is the Z_i-th smallest
// unused natural, Z_i iid Geometric(1-q). Its first-n pattern is
// Mallows(n, q), and times t whose prefix occupies exactly {1..t} regenerate
// the process. Only q in (0,1) keeps every Z finite.
class RegenerativeStream {
 public:
  RegenerativeStream(double q, std::uint64_t seed) : q_(q), rng_(seed) {
    if (!(q > 0.0) || !(q < 1.0))
      throw std::invalid_argument("stream: q must be in (0,1)");
  }

  double q() const { return q_; }
  int length() const { return static_cast<int>(values_.size()); }
  const std::vector<int>& values() const { return values_; }
  const std::vector<long long>& insertion_ranks() const { return zs_; }

  // Largest regeneration time <= length(); 0 when none has happened yet
  // (the empty prefix counts as regenerated).
  int last_regeneration() const { return last_regen_; }

  bool is_regeneration(int t) const {
    // Regenerations are exactly the times whose prefix fills {1..t}; we
    // recorded them as they happened.
    for (int r : regens_) {
      if (r == t) return true;
      if (r > t) break;
    }
    return t == 0;
  }

  void extend(int upto) {
    while (length() < upto) step();
  }

  // Pattern of the first n values.
  Permutation prefix_rank(int n) {
    extend(n);
    return rank(std::vector<int>(values_.begin(), values_.begin() + n));
  }

  // Advances past the current position to the next regeneration and returns
  // it. Finite with probability one for q in (0,1); the step cap only guards
  // against runaway loops if that assumption is violated numerically.
  int next_regeneration() {
    const std::size_t already = regens_.size();
    long long guard = 0;
    while (regens_.size() == already) {
      step();
      if (++guard > (1LL << 40))
        throw std::runtime_error("stream: no regeneration found");
    }
    return regens_.back();
  }

  const std::vector<int>& regenerations() const { return regens_; }

 private:
  void step() {
    const long long z = sample_geometric(q_, rng_);
    const int v = pool_.take(z);
    values_.push_back(v);
    zs_.push_back(z);
    if (v > running_max_) running_max_ = v;
    if (running_max_ == length()) {
      regens_.push_back(length());
      last_regen_ = length();
    }
  }

  double q_;
  Rng rng_;
  detail::NaturalPool pool_;
  std::vector<int> values_;
  std::vector<long long> zs_;
  std::vector<int> regens_;
  int running_max_ = 0;
  int last_regen_ = 0;
};

// Replays a sequence of insertion ranks against a fresh pool and returns the
// pattern of the produced values. This is how a tail of Z's is turned back
// into a permutation: equal ranks collide, so ranking the Z-sequence itself
// would be wrong.
inline Permutation pattern_from_insertion_ranks(const std::vector<long long>& zs) {
  detail::NaturalPool pool;
  std::vector<int> values;
  values.reserve(zs.size());
  for (long long z : zs) values.push_back(pool.take(z));
  return rank(values);
}

}  // namespace mallows
