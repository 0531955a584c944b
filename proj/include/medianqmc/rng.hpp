#pragma once

#include <array>
#include <cstdint>

namespace mqmc {

// 64-bit finalizer taken from splitmix64. Bijective with full avalanche,
// so nearby inputs give statistically unrelated outputs.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// Splittable per-index seed: seed for slot `index` under `master`.
// Loops that need one independent stream per iteration derive the seed
// from the loop index, which keeps results independent of execution
// order (and therefore of the thread count).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(master + (index + 1) * kGoldenGamma);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b) noexcept {
  return derive_seed(derive_seed(master, a), b);
}

// xoshiro256** (Blackman/Vigna, public domain), state filled from the
// splitmix64 sequence so any 64-bit value is an acceptable seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept {
    std::uint64_t x = seed;
    for (auto& w : s_) {
      x += kGoldenGamma;
      w = mix64(x);
    }
  }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform draw from {0, ..., bound-1} by masked rejection; exactly
  // unbiased for every bound.
  std::uint64_t below(std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    const std::uint64_t mask = mask_for(bound - 1);
    for (;;) {
      const std::uint64_t v = next() & mask;
      if (v < bound) return v;
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  // Smallest all-ones mask covering v.
  static constexpr std::uint64_t mask_for(std::uint64_t v) noexcept {
    std::uint64_t m = v;
    m |= m >> 1;
    m |= m >> 2;
    m |= m >> 4;
    m |= m >> 8;
    m |= m >> 16;
    m |= m >> 32;
    return m;
  }

  std::array<std::uint64_t, 4> s_;
};

}  // namespace mqmc
