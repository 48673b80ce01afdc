#pragma once

#include <cstdint>

namespace sac {

/// splitmix64. Self-contained so that every seeded pipeline produces the
/// same bytes on every platform; std:: distributions do not guarantee that.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, n); n == 0 yields 0.
  size_t next_index(size_t n) {
    return n == 0 ? 0 : static_cast<size_t>(next() % n);
  }

  /// Independent stream seed, e.g. one per tree or per fold.
  static uint64_t derive(uint64_t seed, uint64_t stream) {
    SplitMix64 g(seed ^ (0x9E3779B97F4A7C15ull * (stream + 1)));
    return g.next();
  }

 private:
  uint64_t state_;
};

}  // namespace sac
