#pragma once

#include <cstdint>
#include <vector>

namespace ordmetrics {

// xoshiro256++ seeded through splitmix64. All distribution helpers are
// hand-rolled so that a seed produces the identical stream on every
// platform/standard library (std::*_distribution makes no such promise).
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();

  // uniform in [0, bound); bound > 0. Unbiased (rejection).
  uint64_t below(uint64_t bound);

  // uniform in [0, 1) with 53 random bits
  double real01();

  double real(double lo, double hi) { return lo + (hi - lo) * real01(); }

  // true with probability p
  bool coin(double p) { return real01() < p; }

  // standard normal (polar Box-Muller, no cached spare: one value per call)
  double normal();

  // Gamma(shape, scale = 1), shape > 0 (Marsaglia–Tsang)
  double gamma(double shape);

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Deterministic stream splitting: mix(a, b) never equals a for the b used
  // here in practice and decorrelates derived streams (splitmix64 round).
  static uint64_t mix(uint64_t a, uint64_t b);

 private:
  uint64_t s_[4];
};

}  // namespace ordmetrics
