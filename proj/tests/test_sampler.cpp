#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "lozenge/enumeration.hpp"
#include "lozenge/errors.hpp"
#include "lozenge/growth.hpp"
#include "lozenge/rng.hpp"
#include "lozenge/sampler.hpp"

using namespace lozenge;

namespace {

std::vector<long> slice_volumes(const PlanePartition& pi) {
  const BackWall w = pi.domain().wall();
  std::vector<long> out;
  for (int t = w.u0() + 1; t < w.un(); ++t) out.push_back(pi.slice(t).size());
  return out;
}

}  // namespace

TEST_CASE("rng streams are reproducible and independent") {
  Rng a(5, 0), b(5, 0), c(5, 1);
  bool differ = false;
  for (int i = 0; i < 16; ++i) {
    const auto x = a.bits();
    CHECK(x == b.bits());
    differ |= x != c.bits();
  }
  CHECK(differ);
  Rng g(3, 0);
  double mean = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) mean += g.geometric(0.6);
  CHECK(mean / n == doctest::Approx(0.6 / 0.4).epsilon(0.02));
  CHECK(g.geometric(0.0) == 0);
}

TEST_CASE("property: transfer rows are stochastic") {
  gen::Engine e(51);
  for (int rep = 0; rep < 40; ++rep) {
    const BoxDomain box = gen::box(e, 3);
    const WeightSchedule s = gen::schedule(e).anchored_to(box.wall());
    const SliceChain chain = make_chain(box, gen::uniform_int(e, 1, 4));
    CHECK(chain.states.size() == static_cast<std::size_t>(box.c + box.d + 1));
    CHECK(chain.states.front().size() == 1);
    CHECK(chain.states.back().size() == 1);
    const TransferKernels k = build_transfer(chain, s);
    CHECK(k.max_row_defect < 1e-12);
    for (const StepKernel& st : k.steps)
      for (double p : st.prob) CHECK(p >= 0.0);
  }
}

TEST_CASE("transfer sampler is deterministic and thread independent") {
  const BoxDomain box{Partition({1}), 3, 3};
  WeightSchedule s;
  s.regime = Regime::periodic;
  s.r = 0.5;
  s.alpha = 1.3;
  s = s.anchored_to(box.wall());
  const SampleRun a = sample_domain(box, s, 77, 64);
  SamplerOptions opt;
  opt.threads = 3;
  const SampleRun b = sample_domain(box, s, 77, 64, opt);
  const SampleRun c = sample_domain(box, s, 78, 64);
  CHECK(a.draws == b.draws);
  CHECK(a.draws != c.draws);
  CHECK(a.report.tv_bound <= 1e-9);
  for (const auto& pi : a.draws) CHECK(pi.is_valid());
}

TEST_CASE("transfer sampler refuses oversized state spaces") {
  CHECK_THROWS_AS(make_chain(BoxDomain{Partition{}, 8, 8}, 30, 1000), ResourceError);
}

TEST_CASE("growth local rule") {
  // empty neighbours: the new part is the geometric variable
  CHECK(growth_local_rule({}, {}, {}, 3) == std::vector<int>{3});
  // lambda = (2), nu = (1), mu = (1): the second part cancels
  CHECK(growth_local_rule({2}, {1}, {1}, 2) == std::vector<int>{4});
  // lambda = (3, 1), nu = (2, 2), mu = (2, 1): (3 + g, 2 + 2 - 2, 1 - 1)
  CHECK(growth_local_rule({3, 1}, {2, 1}, {2, 2}, 0) == std::vector<int>{3, 2});
  CHECK(growth_local_rule({3, 1}, {2, 1}, {2, 2}, 4) == std::vector<int>{7, 2});
}

TEST_CASE("growth sampler is deterministic and thread independent") {
  const BoxDomain box{Partition({2, 1}), 4, 5};
  WeightSchedule s;
  s.r = 0.3;
  s = s.anchored_to(box.wall());
  const auto a = growth_sample(box, s, 5, 50, 1);
  const auto b = growth_sample(box, s, 5, 50, 4);
  CHECK(a == b);
  for (const auto& pi : a) CHECK(pi.is_valid());
}

TEST_CASE("property: both samplers reproduce the exact slice volume means") {
  gen::Engine e(52);
  int checked = 0;
  for (int rep = 0; rep < 30 && checked < 6; ++rep) {
    const BoxDomain box = gen::box(e, 3);
    if (box.cell_count() > 5) continue;
    const BackWall w = box.wall();
    const WeightSchedule s = gen::schedule(e).anchored_to(w);
    const SpecializationParams x = x_params(s, w);
    if (!finite_admissibility(x).ok) continue;
    int h = 0;
    try {
      h = choose_h_max(x, 1e-10, 40);
    } catch (const Error&) {
      continue;
    }
    std::vector<std::vector<double>> law;
    try {
      law = exact_slice_volume_law({box, h}, s);
    } catch (const ResourceError&) {
      continue;
    }
    const long n = 4000;
    const auto g = growth_sample(box, s, 100 + rep, n);
    const auto t = sample_domain(box, s, 200 + rep, n).draws;
    for (std::size_t si = 0; si < law.size(); ++si) {
      double mean = 0, sq = 0;
      for (std::size_t v = 0; v < law[si].size(); ++v) {
        mean += v * law[si][v];
        sq += v * v * law[si][v];
      }
      const double se = std::sqrt(std::max(sq - mean * mean, 0.0) / n);
      for (const auto* draws : {&g, &t}) {
        double m = 0;
        for (const auto& pi : *draws) m += slice_volumes(pi)[si];
        m /= n;
        CHECK(std::abs(m - mean) <= 5 * se + 1e-12);
      }
    }
    ++checked;
  }
  CHECK(checked >= 4);
}
