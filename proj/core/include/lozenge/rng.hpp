#pragma once

#include <cstdint>
#include <random>

namespace lozenge {

std::uint64_t splitmix64(std::uint64_t x);

// Independent stream for draw `index` of a run seeded with `seed`.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t index);

  std::uint64_t bits() { return eng_(); }
  // uniform in [0, 1) from the top 53 bits
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  // P(k) = (1 - p) p^k, k >= 0
  long geometric(double p);

 private:
  std::mt19937_64 eng_;
};

}  // namespace lozenge
