#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mallows {

// A permutation of [n] in one-line notation, 1-based: operator()(i) is the
// image of position i. Immutable after construction; construction validates.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n) {
    require(n >= 0, "identity: negative size");
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v), unchecked{});
  }

  static Permutation from_one_line(std::vector<int> v) {
    std::vector<char> seen(v.size() + 1, 0);
    for (int x : v) {
      require(x >= 1 && x <= static_cast<int>(v.size()),
              "from_one_line: value out of range");
      require(!seen[static_cast<std::size_t>(x)],
              "from_one_line: repeated value");
      seen[static_cast<std::size_t>(x)] = 1;
    }
    return Permutation(std::move(v), unchecked{});
  }

  int size() const { return static_cast<int>(v_.size()); }

  int operator()(int i) const {
    require(i >= 1 && i <= size(), "position out of range");
    return v_[static_cast<std::size_t>(i - 1)];
  }

  const std::vector<int>& one_line() const { return v_; }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.v_ == b.v_;
  }

  // Escape hatch for callers that construct valid one-line vectors in bulk
  // (samplers, enumerators) and cannot afford re-validation.
  static Permutation trusted(std::vector<int> v) {
    return Permutation(std::move(v), unchecked{});
  }

 private:
  struct unchecked {};
  Permutation(std::vector<int> v, unchecked) : v_(std::move(v)) {}

  static void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
  }

  std::vector<int> v_;
};

// Number of pairs i < j with p(i) > p(j). Quadratic; every caller here works
// with small n (enumeration stops at n = 8).
inline long long inversions(const Permutation& p) {
  const auto& v = p.one_line();
  long long count = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) ++count;
  return count;
}

inline Permutation inverse(const Permutation& p) {
  std::vector<int> v(static_cast<std::size_t>(p.size()));
  for (int i = 1; i <= p.size(); ++i) v[static_cast<std::size_t>(p(i) - 1)] = i;
  return Permutation::trusted(std::move(v));
}

// Value complement i -> n+1-p(i): the composition of p with the order
// reversal of [n]. Satisfies inversions(reverse(p)) = C(n,2) - inversions(p).
inline Permutation reverse(const Permutation& p) {
  std::vector<int> v(static_cast<std::size_t>(p.size()));
  for (int i = 1; i <= p.size(); ++i)
    v[static_cast<std::size_t>(i - 1)] = p.size() + 1 - p(i);
  return Permutation::trusted(std::move(v));
}

// Pattern a followed by b acting on the next |b| points.
inline Permutation direct_sum(const Permutation& a, const Permutation& b) {
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(a.size() + b.size()));
  for (int x : a.one_line()) v.push_back(x);
  for (int x : b.one_line()) v.push_back(x + a.size());
  return Permutation::trusted(std::move(v));
}

// Relative order of a sequence of distinct integers: rank(v)[i] is the
// number of entries <= v[i]. rank((21,12,19,7,11)) = (5,3,4,1,2).
inline Permutation rank(const std::vector<int>& values) {
  std::vector<int> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return values[static_cast<std::size_t>(a)] <
                                        values[static_cast<std::size_t>(b)]; });
  std::vector<int> out(values.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const int a = idx[r];
    if (r > 0 && values[static_cast<std::size_t>(a)] ==
                     values[static_cast<std::size_t>(idx[r - 1])])
      throw std::invalid_argument("rank: values not distinct");
    out[static_cast<std::size_t>(a)] = static_cast<int>(r) + 1;
  }
  return Permutation::trusted(std::move(out));
}

// Pattern of the first j entries, j in [0, n].
inline Permutation prefix_rank(const Permutation& p, int j) {
  if (j < 0 || j > p.size())
    throw std::invalid_argument("prefix_rank: window out of range");
  const auto& v = p.one_line();
  return rank(std::vector<int>(v.begin(), v.begin() + j));
}

// cycle_counts(p)[len] is the number of cycles of length `len`; index 0 is
// unused. Sum of len * count equals n.
inline std::vector<int> cycle_counts(const Permutation& p) {
  std::vector<int> counts(static_cast<std::size_t>(p.size()) + 1, 0);
  std::vector<char> seen(static_cast<std::size_t>(p.size()) + 1, 0);
  for (int i = 1; i <= p.size(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    int len = 0;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = p(j)) {
      seen[static_cast<std::size_t>(j)] = 1;
      ++len;
    }
    ++counts[static_cast<std::size_t>(len)];
  }
  return counts;
}

// One-line text form used across the CLI: "2,3,1".
inline std::string format_one_line(const Permutation& p) {
  std::string out;
  for (int i = 1; i <= p.size(); ++i) {
    if (i > 1) out += ',';
    out += std::to_string(p(i));
  }
  return out;
}

inline Permutation parse_one_line(const std::string& text) {
  std::vector<int> v;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t pos = 0;
    int value = 0;
    try {
      value = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("parse_one_line: not an integer: " + tok);
    }
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos])))
      ++pos;
    if (pos != tok.size())
      throw std::invalid_argument("parse_one_line: trailing junk: " + tok);
    v.push_back(value);
  }
  return Permutation::from_one_line(std::move(v));
}

}  // namespace mallows
