#pragma once

#include <cstdint>
#include <random>

namespace lrc {

// Deterministic RNG: mt19937_64's output sequence is pinned by the standard,
// and the rejection sampler below is ours, so identical seeds give identical
// draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, bound); bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    // Rejection sampling over the largest multiple of bound below 2^64.
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % bound;
  }

  // Uniform 64-bit mask restricted to the low n bits.
  std::uint64_t mask(int n) {
    std::uint64_t v = eng_();
    return n >= 64 ? v : (v & ((std::uint64_t{1} << n) - 1));
  }

 private:
  std::mt19937_64 eng_;
};

// Stateless seed mixer for deriving independent streams (attempt indices,
// worker ids) from one base seed.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace lrc
