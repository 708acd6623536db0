#pragma once

#include <cstdint>

namespace tonguelock {

// Counter-based splittable RNG. Stream layout is part of the reproducibility
// contract: stream_for(seed, k) yields the same sequence on every platform
// and for every worker count, so parallel order can never change results.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

// Independent stream k derived from a root seed.
inline SplitMix64 stream_for(std::uint64_t root_seed, std::uint64_t stream) {
  SplitMix64 mix(root_seed ^ (0x9E3779B97F4A7C15ull * (stream + 1)));
  mix.next();
  mix.next();
  return mix;
}

}  // namespace tonguelock
