#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace mecsched {

// All randomized operations sample through this wrapper instead of the
// std distributions, whose output sequences are implementation-defined.
// mt19937_64 itself is fully specified, so results are reproducible
// across standard libraries for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, hi].
  double uniform_positive(double hi) { return hi * (1.0 - uniform01()); }

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = gen_();
      if (x >= threshold) return x % n;
    }
  }

  /// k distinct values from [0, n), in draw order (partial Fisher-Yates).
  std::vector<int> sample_indices(int n, int k) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::vector<int> drawn;
    drawn.reserve(k);
    for (int i = 0; i < k; ++i) {
      const int j = i + static_cast<int>(below(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[i], pool[j]);
      drawn.push_back(pool[i]);
    }
    return drawn;
  }

 private:
  std::mt19937_64 gen_;
};

/// splitmix64 finalizer over a simple combine; used to derive independent
/// sub-stream seeds from a base seed.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 0x632be59bd9b4e019ULL);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

}  // namespace mecsched
