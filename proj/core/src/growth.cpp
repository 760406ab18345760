#include "lozenge/growth.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "lozenge/errors.hpp"

namespace lozenge {

namespace {

int part(const std::vector<int>& p, std::size_t k) { return k < p.size() ? p[k] : 0; }

}  // namespace

std::vector<int> growth_local_rule(const std::vector<int>& lambda, const std::vector<int>& mu,
                                   const std::vector<int>& nu, long g) {
  const std::size_t len = std::max(lambda.size(), nu.size()) + 1;
  std::vector<int> out(len, 0);
  out[0] = std::max(part(lambda, 0), part(nu, 0)) + static_cast<int>(g);
  for (std::size_t k = 1; k < len; ++k)
    out[k] = std::max(part(lambda, k), part(nu, k)) + std::min(part(lambda, k - 1), part(nu, k - 1)) -
             part(mu, k - 1);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<Partition> growth_sample_slices(const SpecializationParams& x, Rng& rng) {
  const BackWall& w = x.wall();
  const int steps = w.un() - w.u0();
  std::vector<int> rising, falling;
  for (int s = 0; s < steps; ++s) (x.slope(2 * (w.u0() + s) + 1) > 0 ? rising : falling).push_back(s);
  std::vector<int> word(falling);
  word.insert(word.end(), rising.begin(), rising.end());
  std::vector<std::vector<int>> slot(steps + 1);
  auto log_x = [&](int s) {
    const int two_m = 2 * (w.u0() + s) + 1;
    return x.slope(two_m) > 0 ? x.log_x_minus(two_m) : x.log_x_plus(two_m);
  };
  int pos = static_cast<int>(falling.size());
  for (int i : rising) {
    int p = pos++;
    while (p > 0 && x.slope(2 * (w.u0() + word[p - 1]) + 1) < 0 && word[p - 1] > i) {
      const double lp = log_x(i) + log_x(word[p - 1]);
      if (!(lp < 0.0)) throw ConfigError("weights are not admissible on this domain");
      const long g = rng.geometric(std::exp(lp));
      slot[p] = growth_local_rule(slot[p - 1], slot[p], slot[p + 1], g);
      std::swap(word[p - 1], word[p]);
      --p;
    }
  }
  std::vector<Partition> out;
  out.reserve(steps - 1);
  for (int k = 1; k < steps; ++k) out.emplace_back(slot[k]);
  return out;
}

PlanePartition growth_sample(const BoxDomain& domain, const WeightSchedule& s, Rng& rng) {
  const BackWall wall = domain.wall();
  const SpecializationParams x = x_params(s.anchored_to(wall), wall);
  return PlanePartition::from_slices(domain, growth_sample_slices(x, rng));
}

std::vector<PlanePartition> growth_sample(const BoxDomain& domain, const WeightSchedule& s,
                                          std::uint64_t seed, long n, int threads) {
  const BackWall wall = domain.wall();
  const WeightSchedule sa = s.anchored_to(wall);
  sa.validate();
  const SpecializationParams x = x_params(sa, wall);
  if (!finite_admissibility(x).ok) throw ConfigError("weights are not admissible on this domain");
  std::vector<PlanePartition> out(n);
  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max(1L, n))));
  auto work = [&](int t) {
    for (long i = t; i < n; i += threads) {
      Rng rng(seed, static_cast<std::uint64_t>(i));
      out[i] = PlanePartition::from_slices(domain, growth_sample_slices(x, rng));
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace lozenge
