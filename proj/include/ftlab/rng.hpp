#pragma once

#include <cstdint>
#include <random>

namespace ftlab {

// One step of the SplitMix64 sequence (Steele, Lea & Flood).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Published per-run seed derivation: run i of an experiment with base seed b
// uses mix_seed(b, i). Two SplitMix64 steps decorrelate nearby indices.
inline std::uint64_t mix_seed(std::uint64_t base_seed, std::uint64_t run_index) {
  std::uint64_t s = base_seed ^ (run_index * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull);
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b >> 1);
}

// All randomness in the library flows through this wrapper, so any result is
// reproducible from a single 64-bit seed. The engine (std::mt19937_64) and the
// derived draws below are fully specified, hence stable across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, bound); bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ftlab
