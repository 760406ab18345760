#pragma once

#include <cstdint>
#include <vector>

#include "lozenge/geometry.hpp"
#include "lozenge/weights.hpp"

namespace lozenge {

// Diagonal slices u_0 < t < u_n with capped state spaces. The boundary slices
// t = u_0 and t = u_n are the empty partition.
struct SliceChain {
  BoxDomain domain;
  int h_max = 0;
  std::vector<int> l_max;                     // per slice t = u_0 + 1 .. u_n - 1
  std::vector<int> direction;                 // per step t -> t + 1 (u_0 .. u_n - 1): +1 grows, -1 shrinks
  std::vector<std::vector<Partition>> states; // per slot t = u_0 .. u_n
  int u0() const { return -domain.c; }
  int un() const { return domain.d; }
};

// States with parts <= h_max and length <= the diagonal length. ResourceError
// when the state space of a slice would exceed max_states.
SliceChain make_chain(const BoxDomain& domain, int h_max, long max_states = 200000);

// Forward kernels of one step in compressed rows: targets[row_start[i] .. row_start[i+1])
// with cumulative probabilities.
struct StepKernel {
  std::vector<int> row_start;
  std::vector<int> target;
  std::vector<double> prob;
  std::vector<double> cumulative;
};

struct TransferKernels {
  std::vector<StepKernel> steps;  // step t -> t + 1 for t = u_0 .. u_n - 1
  double log_z = 0.0;             // log of the truncated partition function
  // largest |row sum - 1| over all rows
  double max_row_defect = 0.0;
};

TransferKernels build_transfer(const SliceChain& chain, const WeightSchedule& s);

struct SamplerReport {
  std::uint64_t seed = 0;
  int h_max = 0;
  int l_max = 0;
  double tv_bound = 0.0;
  long samples = 0;
};

struct SamplerOptions {
  double tv_tol = 1e-9;
  int h_max = 0;  // 0 chooses it from tv_tol
  long max_states = 200000;
  int threads = 1;
};

// Draw i uses the stream (seed, i); output is independent of the thread count.
std::vector<PlanePartition> sample(const SliceChain& chain, const TransferKernels& kernels,
                                   std::uint64_t seed, long n, int threads = 1);

struct SampleRun {
  std::vector<PlanePartition> draws;
  SamplerReport report;
};

// Convenience wrapper: caps from the tolerance, kernels, draws.
SampleRun sample_domain(const BoxDomain& domain, const WeightSchedule& s, std::uint64_t seed, long n,
                        const SamplerOptions& opt = {});

}  // namespace lozenge
