#include "lozenge/rng.hpp"

#include <cmath>

namespace lozenge {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t index)
    : eng_(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL))) {}

long Rng::geometric(double p) {
  if (p <= 0.0) return 0;
  // 1 - uniform lies in (0, 1]
  const double u = 1.0 - uniform();
  return static_cast<long>(std::floor(std::log(u) / std::log(p)));
}

}  // namespace lozenge
