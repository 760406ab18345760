#include <benchmark/benchmark.h>

#include "lozenge/asymptotics.hpp"
#include "lozenge/growth.hpp"
#include "lozenge/kernel.hpp"
#include "lozenge/sampler.hpp"

using namespace lozenge;

namespace {

WeightSchedule periodic(double r, double alpha) {
  WeightSchedule s;
  s.regime = Regime::periodic;
  s.r = r;
  s.alpha = alpha;
  return s;
}

BoxDomain staircase(double r) {
  StaircaseSpec sp;
  sp.r = r;
  return staircase_family(sp).domain;
}

}  // namespace

// one kernel entry on a staircase near the liquid region
void BM_Kernel(benchmark::State& st) {
  const double r = 1.0 / static_cast<double>(st.range(0));
  const BoxDomain box = staircase(r);
  const BackWall w = box.wall();
  const SpecializationParams x = x_params(periodic(r, 1.5).anchored_to(w), w);
  const int t = static_cast<int>(0.5 / r);
  const int base = static_cast<int>(-0.5 / r);
  const LatticePoint p{t, 2 * base + (((w.eval(t) + 1) % 2 + 2) % 2)};
  const LatticePoint q{t + 1, p.two_h + 1};
  for (auto _ : st) benchmark::DoNotOptimize(kernel(x, p, q));
}
BENCHMARK(BM_Kernel)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_GrowthSample(benchmark::State& st) {
  const double r = 1.0 / static_cast<double>(st.range(0));
  const BoxDomain box = staircase(r);
  const WeightSchedule s = periodic(r, 1.5).anchored_to(box.wall());
  std::uint64_t seed = 1;
  for (auto _ : st) benchmark::DoNotOptimize(growth_sample(box, s, seed++, 1));
  st.SetLabel(std::to_string(box.cell_count()) + " cells");
}
BENCHMARK(BM_GrowthSample)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_TransferBuild(benchmark::State& st) {
  const BoxDomain box{Partition({1}), static_cast<int>(st.range(0)), static_cast<int>(st.range(0))};
  const WeightSchedule s = periodic(0.5, 1.3).anchored_to(box.wall());
  for (auto _ : st) {
    const SliceChain chain = make_chain(box, 4);
    benchmark::DoNotOptimize(build_transfer(chain, s));
  }
}
BENCHMARK(BM_TransferBuild)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_TransferSample(benchmark::State& st) {
  const BoxDomain box{Partition({1}), 4, 4};
  const WeightSchedule s = periodic(0.5, 1.3).anchored_to(box.wall());
  const SliceChain chain = make_chain(box, 4);
  const TransferKernels k = build_transfer(chain, s);
  std::uint64_t seed = 1;
  for (auto _ : st) benchmark::DoNotOptimize(sample(chain, k, seed++, st.range(0)));
}
BENCHMARK(BM_TransferSample)->Arg(1)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_BulkDensity(benchmark::State& st) {
  const LimitGeometry g = LimitGeometry::bounded(1.0, 2.0, 1.5);
  for (auto _ : st) benchmark::DoNotOptimize(bulk_density(0.5, -0.5, g));
}
BENCHMARK(BM_BulkDensity);

BENCHMARK_MAIN();
