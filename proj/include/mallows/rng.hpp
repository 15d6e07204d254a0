#pragma once

#include <array>
#include <cstdint>

// Fixed, self-contained random number generation. The standard library's
// distributions are implementation-defined, and several consumers here
// promise bit-identical output for a given seed regardless of platform or
// worker count, so both the generator and all real/integer mappings are
// pinned down explicitly.

namespace mallows {

// One step of the splitmix64 sequence, advancing `state`.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for replica `index` of a run keyed by `master`. Replicas re-seed
// independently, so splitting them across threads cannot change results.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  std::uint64_t a = splitmix64(s);
  return a ^ splitmix64(s);
}

// xoshiro256++ seeded through splitmix64, as its authors recommend.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [1, m], m >= 1, via Lemire's multiply-shift
  // (unbiased, and cheaper than rejection by division).
  std::uint64_t uniform_int(std::uint64_t m) {
    unsigned __int128 mul = static_cast<unsigned __int128>(next()) * m;
    auto low = static_cast<std::uint64_t>(mul);
    if (low < m) {
      const std::uint64_t threshold = (0 - m) % m;
      while (low < threshold) {
        mul = static_cast<unsigned __int128>(next()) * m;
        low = static_cast<std::uint64_t>(mul);
      }
    }
    return static_cast<std::uint64_t>(mul >> 64) + 1;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace mallows
