#pragma once

#include <cstdint>
#include <vector>

#include "lozenge/geometry.hpp"
#include "lozenge/rng.hpp"
#include "lozenge/weights.hpp"

namespace lozenge {

// Local move at a valley lambda > mu < nu: returns the peak mu' with
// lambda < mu' > nu, adding g to the first part (geometric RSK rule).
std::vector<int> growth_local_rule(const std::vector<int>& lambda, const std::vector<int>& mu,
                                   const std::vector<int>& nu, long g);

// Exact draw without truncation. Starts from the empty configuration on the
// word with every falling step first and moves each rising step left past the
// falling steps that follow it on the wall, one move per cell of the domain.
// Returns the slices t = u_0 + 1 .. u_n - 1.
std::vector<Partition> growth_sample_slices(const SpecializationParams& x, Rng& rng);

PlanePartition growth_sample(const BoxDomain& domain, const WeightSchedule& s, Rng& rng);

// Draw i uses the stream (seed, i).
std::vector<PlanePartition> growth_sample(const BoxDomain& domain, const WeightSchedule& s,
                                          std::uint64_t seed, long n, int threads = 1);

}  // namespace lozenge
