#pragma once

#include <cstdint>

namespace mink {

// Counter-based generator (splitmix64 finalizer over key + counter).  Streams
// derived from the same seed are independent, and any (seed, stream, counter)
// triple yields the same value in serial and parallel use.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(mix(seed + 0x6a09e667f3bcc909ull) ^
                 (0x9e3779b97f4a7c15ull * (stream + 1)))) {}

  std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }

  // Uniform in [0, 1), 53 random bits.
  double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * next_unit(); }

  // Uniform in {0, ..., n-1}; n must be positive and far below 2^63.
  int uniform_int(int n) { return int(next_u64() % std::uint64_t(n)); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace mink
