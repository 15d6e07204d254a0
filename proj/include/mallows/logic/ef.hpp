#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mallows/errors.hpp"
#include "mallows/logic/formula.hpp"
#include "mallows/permutation.hpp"

namespace mallows::logic {

// Canonical d-round back-and-forth class of a permutation structure. Two
// permutations get the same id exactly when they satisfy the same sentences
// of quantifier depth <= d in the chosen signature. Ids are process-global
// (interned); the hash is a stable structural fingerprint for display.
struct EFType {
  int id = -1;
  std::uint64_t hash = 0;

  friend bool operator==(const EFType& a, const EFType& b) {
    return a.id == b.id;
  }
  friend bool operator!=(const EFType& a, const EFType& b) {
    return !(a == b);
  }
  friend bool operator<(const EFType& a, const EFType& b) {
    return a.id < b.id;
  }

  std::string label() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(hash));
    return buf;
  }
};

namespace detail {

// Global registry of type nodes. A node is the atomic diagram of the pinned
// tuple plus the sorted set of child node ids (one game round deeper), so
// equal ids mean structurally identical unravelings.
class TypeInterner {
 public:
  static TypeInterner& instance() {
    static TypeInterner interner;
    return interner;
  }

  std::pair<int, std::uint64_t> intern(const std::string& atoms,
                                       const std::vector<int>& children) {
    std::lock_guard<std::mutex> lock(mu_);
    const auto key = std::make_pair(atoms, children);
    if (auto it = ids_.find(key); it != ids_.end())
      return {it->second, hashes_[static_cast<std::size_t>(it->second)]};

    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    const auto mix = [&h](std::uint64_t v) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
      h ^= h >> 33;
    };
    for (const char c : atoms) mix(static_cast<unsigned char>(c));
    for (const int child : children)
      mix(hashes_[static_cast<std::size_t>(child)]);

    const int id = static_cast<int>(hashes_.size());
    hashes_.push_back(h);
    ids_.emplace(key, id);
    return {id, h};
  }

  std::uint64_t hash_of(int id) {
    std::lock_guard<std::mutex> lock(mu_);
    return hashes_[static_cast<std::size_t>(id)];
  }

 private:
  TypeInterner() = default;
  std::mutex mu_;
  std::map<std::pair<std::string, std::vector<int>>, int> ids_;
  std::vector<std::uint64_t> hashes_;
};

struct EfComputer {
  const Permutation& p;
  Signature sig;
  std::map<std::vector<int>, int> memo;  // tuple length encodes the level

  std::string atoms(const std::vector<int>& tuple, int d_remaining) const {
    std::string out;
    out += static_cast<char>('0' + d_remaining);
    out += sig == Signature::TOOB ? 'B' : 'T';
    for (const int a : tuple)
      for (const int b : tuple) {
        int code = (a == b) ? 1 : 0;
        if (sig == Signature::TOOB) {
          code |= (p(a) == b) ? 2 : 0;
        } else {
          code |= (a < b) ? 2 : 0;
          code |= (p(a) < p(b)) ? 4 : 0;
        }
        out += static_cast<char>('0' + code);
      }
    return out;
  }

  int type_of(std::vector<int>& tuple, int d) {
    if (auto it = memo.find(tuple); it != memo.end()) return it->second;
    std::vector<int> children;
    if (d > 0) {
      std::set<int> kids;
      for (int b = 1; b <= p.size(); ++b) {
        tuple.push_back(b);
        kids.insert(type_of(tuple, d - 1));
        tuple.pop_back();
      }
      children.assign(kids.begin(), kids.end());
    }
    const int id = TypeInterner::instance().intern(atoms(tuple, d), children).first;
    memo.emplace(tuple, id);
    return id;
  }
};

inline void check_ef_budget(int n, int d) {
  if (d < 0) throw std::invalid_argument("ef_type: d must be >= 0");
  double cost = 1.0;
  for (int i = 0; i < d; ++i) cost *= std::max(n, 1);
  if (d > 4 || cost > 2e6) throw budget_error("EF budget");
}

}  // namespace detail

inline EFType ef_type(const Permutation& p, int d, Signature sig) {
  detail::check_ef_budget(p.size(), d);
  detail::EfComputer computer{p, sig, {}};
  std::vector<int> tuple;
  const int id = computer.type_of(tuple, d);
  return {id, detail::TypeInterner::instance().hash_of(id)};
}

inline bool ef_equivalent(const Permutation& p, const Permutation& s, int d,
                          Signature sig) {
  return ef_type(p, d, sig) == ef_type(s, d, sig);
}

}  // namespace mallows::logic
