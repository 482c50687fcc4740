#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace kselect {

// Portable, seedable random number generation.
//
// The project needs bit-identical random streams across platforms and
// compilers (profiles, generated datasets and gap references are all pinned
// by seed in serialized outputs), so the generators are implemented here
// instead of relying on std::mt19937/std::*_distribution, whose outputs are
// not portable across standard library implementations.
//
// Algorithms:
//   - SplitMix64 (Steele, Lea, Flood) for seed expansion and stream
//     derivation.
//   - xoshiro256++ (Blackman, Vigna) as the main generator.
//   - Marsaglia's polar method for normal deviates.

// One SplitMix64 step: advances `state` and returns the next 64-bit output.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Derives an independent substream seed from a master seed and up to two
// stream coordinates (e.g. k and restart index). Each coordinate is absorbed
// into the fully mixed output of the previous step:
//
//   h = splitmix64_next(master);  h = splitmix64_next(h ^ a);
//   return splitmix64_next(h ^ b)
//
// Absorbing into the mixed output (rather than the raw counter state)
// matters: small nearby coordinates would otherwise perturb only the low
// bits, letting different (a, b) pairs cancel into the same seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0) {
  std::uint64_t state = master;
  state = splitmix64_next(state) ^ a;
  state = splitmix64_next(state) ^ b;
  return splitmix64_next(state);
}

// xoshiro256++ with SplitMix64 state expansion.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
    // All-zero state is the one invalid state for xoshiro; SplitMix64 cannot
    // realistically produce four zero words, but guard anyway.
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next_u64() {
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

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Unbiased integer in [0, bound) via rejection of the biased remainder zone.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // Standard normal deviate (Marsaglia polar method, one value cached).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_double() - 1.0;
      v = 2.0 * next_double() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace kselect
