#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mallows/permutation.hpp"

namespace mallows::stats {

// Closed integer interval {lo, ..., hi} of positions, or the explicit empty
// marker. Gaps between adjacent witnesses are kept as empty intervals so a
// gap sequence stays index-aligned with the witness set that produced it.
class Interval {
 public:
  Interval(int lo, int hi) : lo_(lo), hi_(hi) {
    if (lo < 1 || hi < lo)
      throw std::invalid_argument("interval: need 1 <= lo <= hi");
  }
  static Interval empty() { return Interval(tag_empty{}); }

  bool is_empty() const { return hi_ < lo_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int size() const { return is_empty() ? 0 : hi_ - lo_ + 1; }
  bool contains(int i) const { return !is_empty() && lo_ <= i && i <= hi_; }

  std::set<int> positions() const {
    std::set<int> out;
    for (int i = lo_; i <= hi_; ++i) out.insert(i);
    return out;
  }

  friend bool operator==(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  struct tag_empty {};
  explicit Interval(tag_empty) : lo_(1), hi_(0) {}
  int lo_, hi_;
};

inline bool disjoint(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return true;
  return a.hi() < b.lo() || b.hi() < a.lo();
}

// Ordered list of pairwise-disjoint intervals, as constructed.
class IntervalSeq {
 public:
  IntervalSeq() = default;
  explicit IntervalSeq(std::vector<Interval> items) : items_(std::move(items)) {
    for (std::size_t i = 0; i < items_.size(); ++i)
      for (std::size_t j = i + 1; j < items_.size(); ++j)
        if (!disjoint(items_[i], items_[j]))
          throw std::invalid_argument("interval sequence: intervals overlap");
  }

  const std::vector<Interval>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  const Interval& operator[](std::size_t i) const { return items_.at(i); }

  friend bool operator==(const IntervalSeq& a, const IntervalSeq& b) {
    return a.items_ == b.items_;
  }

 private:
  std::vector<Interval> items_;
};

inline std::string format_interval(const Interval& v) {
  if (v.is_empty()) return "()";
  return std::to_string(v.lo()) + "-" + std::to_string(v.hi());
}

inline std::string format_interval_seq(const IntervalSeq& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ',';
    out += format_interval(seq[i]);
  }
  return out;
}

// "lo-hi" with 1 <= lo <= hi, or "()" for the empty interval.
inline Interval parse_interval(const std::string& text) {
  if (text == "()") return Interval::empty();
  const auto dash = text.find('-');
  if (dash == std::string::npos)
    throw std::invalid_argument("interval: expected lo-hi");
  std::size_t used_lo = 0, used_hi = 0;
  const int lo = std::stoi(text.substr(0, dash), &used_lo);
  const std::string rest = text.substr(dash + 1);
  const int hi = std::stoi(rest, &used_hi);
  if (used_lo != dash || used_hi != rest.size())
    throw std::invalid_argument("interval: expected lo-hi");
  return Interval(lo, hi);
}

namespace detail {

inline void check_positions(const Permutation& p, const std::set<int>& a,
                            const char* who) {
  for (const int i : a)
    if (i < 1 || i > p.size())
      throw std::invalid_argument(std::string(who) + ": position out of range");
}

}  // namespace detail

// W_k(A): positions i whose image starts a run of k consecutive values all
// hit by A, i.e. {p(i), p(i)+1, ..., p(i)+k-1} is contained in p[A].
inline std::set<int> w_set(const Permutation& p, const std::set<int>& a,
                           int k) {
  if (k < 1) throw std::invalid_argument("w_set: k must be >= 1");
  detail::check_positions(p, a, "w_set");
  std::vector<bool> in_image(static_cast<std::size_t>(p.size()) + 1, false);
  for (const int i : a) in_image[static_cast<std::size_t>(p(i))] = true;

  std::set<int> out;
  for (const int i : a) {
    const int first = p(i);
    if (first + k - 1 > p.size()) continue;
    bool all = true;
    for (int v = first; v < first + k && all; ++v)
      all = in_image[static_cast<std::size_t>(v)];
    if (all) out.insert(i);
  }
  return out;
}

inline int w_count(const Permutation& p, const std::set<int>& a, int k) {
  return static_cast<int>(w_set(p, a, k).size());
}

// S(I,J): values v with v in p[I] and v+1 in p[J].
inline std::set<int> s_set(const Permutation& p, const std::set<int>& i_set,
                           const std::set<int>& j_set) {
  detail::check_positions(p, i_set, "s_set");
  detail::check_positions(p, j_set, "s_set");
  for (const int i : i_set)
    if (j_set.count(i)) throw std::invalid_argument("s_set: I and J overlap");

  std::set<int> j_image;
  for (const int j : j_set) j_image.insert(p(j));
  std::set<int> out;
  for (const int i : i_set)
    if (j_image.count(p(i) + 1)) out.insert(p(i));
  return out;
}

// x: the first position of I whose image lies in S(I,J); y: the position
// (in J) carrying the next value up. Absent when S(I,J) is empty.
inline std::optional<std::pair<int, int>> xy_pair(const Permutation& p,
                                                  const std::set<int>& i_set,
                                                  const std::set<int>& j_set) {
  const std::set<int> s = s_set(p, i_set, j_set);
  if (s.empty()) return std::nullopt;
  const Permutation q = inverse(p);
  for (const int x : i_set)
    if (s.count(p(x))) return std::make_pair(x, q(p(x) + 1));
  return std::nullopt;  // unreachable: s only holds images of I
}

// The gaps between consecutive elements of W_k(J): with W_k(J) = {i_1 < ...
// < i_L} this is ({i_1+1..i_2-1}, ..., {i_{L-1}+1..i_L-1}), where adjacent
// witnesses contribute an explicit empty interval. Empty sequence when
// fewer than two witnesses exist.
inline IntervalSeq minimal_intervals(const Permutation& p, const Interval& j,
                                     int k) {
  const std::set<int> w = w_set(p, j.positions(), k);
  if (w.size() <= 1) return IntervalSeq{};
  std::vector<int> points(w.begin(), w.end());
  std::vector<Interval> gaps;
  for (std::size_t t = 0; t + 1 < points.size(); ++t) {
    if (points[t] + 1 > points[t + 1] - 1)
      gaps.push_back(Interval::empty());
    else
      gaps.push_back(Interval(points[t] + 1, points[t + 1] - 1));
  }
  return IntervalSeq(std::move(gaps));
}

// Smallest j whose prefix image contains two consecutive values; absent
// means no prefix does (the infimum over the empty set).
inline std::optional<int> j1(const Permutation& p) {
  // seen[v] for v in 0..n+1 so the neighbor probes need no bounds checks.
  std::vector<bool> seen(static_cast<std::size_t>(p.size()) + 2, false);
  for (int j = 1; j <= p.size(); ++j) {
    const int v = p(j);
    if (seen[static_cast<std::size_t>(v) - 1] ||
        seen[static_cast<std::size_t>(v) + 1])
      return j;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return std::nullopt;
}

// j1 of the pattern of the first j1(p) positions.
inline int k1(const Permutation& p) {
  if (p.size() <= 1) throw std::invalid_argument("k1 undefined for n <= 1");
  const auto j = j1(p);
  // n >= 2 always has a consecutive pair by position n, so j is present.
  return *j1(prefix_rank(p, *j));
}

}  // namespace mallows::stats
