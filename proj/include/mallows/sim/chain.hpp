#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "mallows/logic/ef.hpp"
#include "mallows/logic/formula.hpp"
#include "mallows/permutation.hpp"
#include "mallows/stream.hpp"

namespace mallows::sim {

// Snapshot of the reduced chain at time n: the depth-d class of the pattern
// regenerated at R_n, plus the raw insertion ranks drawn since. The tail is
// empty exactly when n itself is a regeneration time.
struct ChainState {
  logic::EFType class_label;
  std::vector<long long> tail;
  int n = 0;
};

// Runs the insertion process to n_max and records the chain state at every
// time. For the first ten steps the defining identity is re-checked move by
// move: the prefix pattern must be depth-d equivalent to rep(class) followed
// by the pattern the tail ranks reproduce, where rep(class) is the first
// pattern that landed in the class during this call.
inline std::vector<ChainState> chain_trace(double q, int d, int n_max,
                                           std::uint64_t seed) {
  if (d < 0 || d > 2)
    throw std::invalid_argument("chain: d must be between 0 and 2");
  if (n_max < 1) throw std::invalid_argument("chain: n_max must be >= 1");
  RegenerativeStream stream(q, seed);
  std::map<int, Permutation> representative;
  std::vector<ChainState> trace;
  trace.reserve(static_cast<std::size_t>(n_max));
  int labeled = -1;
  logic::EFType label{};
  for (int n = 1; n <= n_max; ++n) {
    stream.extend(n);
    const int regen = stream.last_regeneration();
    if (regen != labeled) {
      const Permutation head = stream.prefix_rank(regen);
      label = logic::ef_type(head, d, logic::Signature::TOTO);
      representative.emplace(label.id, head);
      labeled = regen;
    }
    const auto& ranks = stream.insertion_ranks();
    std::vector<long long> tail(ranks.begin() + regen, ranks.begin() + n);
    if (n <= 10) {
      const Permutation replayed = direct_sum(
          representative.at(label.id), pattern_from_insertion_ranks(tail));
      if (!logic::ef_equivalent(stream.prefix_rank(n), replayed, d,
                                logic::Signature::TOTO))
        throw std::logic_error("chain: composition identity failed");
    }
    trace.push_back(ChainState{label, std::move(tail), n});
  }
  return trace;
}

}  // namespace mallows::sim
