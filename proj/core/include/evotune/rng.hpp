#pragma once

#include <cstdint>

namespace evotune {

// xoroshiro128++ with splitmix64 seeding. Hand-rolled so that identical
// seeds give identical streams on every platform and standard library;
// all reproducibility guarantees in this project rest on that.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    s0_ = splitmix64(seed);
    s1_ = splitmix64(s0_ ^ 0x9e3779b97f4a7c15ULL);
    if (s0_ == 0 && s1_ == 0) s1_ = 1;
  }

  Rng(uint64_t s0, uint64_t s1) : s0_(s0), s1_(s1) {
    if (s0_ == 0 && s1_ == 0) s1_ = 1;
  }

  uint64_t next_u64() {
    const uint64_t a = s0_;
    uint64_t b = s1_;
    const uint64_t result = rotl(a + b, 17) + a;
    b ^= a;
    s0_ = rotl(a, 49) ^ b ^ (b << 21);
    s1_ = rotl(b, 28);
    return result;
  }

  // Single uniform bit (top bit of the next word).
  int next_bit() { return static_cast<int>(next_u64() >> 63); }

  // Uniform integer in [0, n). Unbiased via rejection sampling; n >= 1.
  uint64_t uniform(uint64_t n) {
    const uint64_t threshold = (0 - n) % n;
    for (;;) {
      const uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform double in [0, 1) with 53 bits of precision.
  double uniform_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform_double() < p; }

  uint64_t state0() const { return s0_; }
  uint64_t state1() const { return s1_; }

  static uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t s0_, s1_;
};

// Stream seeds for subcomponents, derived from one master seed by a
// documented counter offset: stream k uses splitmix64(base + k * golden).
inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
  return Rng::splitmix64(base + stream * 0x9e3779b97f4a7c15ULL);
}

}  // namespace evotune
