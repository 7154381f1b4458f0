#ifndef HAWKES_RNG_HPP
#define HAWKES_RNG_HPP

#include <cmath>
#include <cstdint>

// Counter-based random numbers. Draw n of a stream keyed by `seed` is a
// SplitMix64 finalizer applied to seed + (n+1)*gamma, so any draw is
// addressable by index and streams for different (seed, index) pairs can be
// derived without shared state. This keeps replicates reproducible no matter
// how the harness schedules them, and the output is identical across
// platforms (std::*_distribution is not).

namespace hawkes {

inline constexpr uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ull;

inline uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Derives a child seed from a base seed and up to three indices (grid cell,
// replicate, role). Chained finalizer applications; collisions between
// distinct index tuples are as unlikely as 64-bit hash collisions get.
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0,
                            uint64_t c = 0) {
  uint64_t h = mix64(base + kSplitMixGamma);
  h = mix64(h ^ (a + kSplitMixGamma));
  h = mix64(h ^ (b + 0xD1B54A32D192ED03ull));
  h = mix64(h ^ (c + 0x8CB92BA72F3D8DD7ull));
  return h;
}

class CounterRng {
 public:
  explicit CounterRng(uint64_t seed) : seed_(seed) {}

  uint64_t next_u64() { return mix64(seed_ + (++counter_) * kSplitMixGamma); }

  // Open interval (0,1): never returns 0 or 1, so logs and divisions by
  // 1-u downstream are safe.
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  // Strictly positive Exp(1) variate.
  double exponential() { return -std::log(uniform_open()); }

  bool bernoulli(double p) { return uniform_open() < p; }

  // Box-Muller pair, second value cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform_open();
    double u2 = uniform_open();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  uint64_t seed() const { return seed_; }
  uint64_t draws() const { return counter_; }

 private:
  uint64_t seed_;
  uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hawkes

#endif
