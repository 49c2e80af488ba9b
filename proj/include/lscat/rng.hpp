#pragma once

#include <cstdint>
#include <random>

namespace lscat {

// Seeded RNG wrapper. std::mt19937_64 output is pinned by the standard, and
// the helpers below avoid std distributions (whose streams are
// implementation-defined), so every derived value is reproducible bit-for-bit
// from the seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, k). Modulo bias is irrelevant at the k values used here.
  std::uint64_t below(std::uint64_t k) { return k == 0 ? 0 : next() % k; }

  int range(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace lscat
