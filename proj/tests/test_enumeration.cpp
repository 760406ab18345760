#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "lozenge/enumeration.hpp"
#include "lozenge/errors.hpp"

using namespace lozenge;

namespace {

// boxed plane partitions in a x b x c
double macmahon(int a, int b, int c) {
  double p = 1.0;
  for (int i = 1; i <= a; ++i)
    for (int j = 1; j <= b; ++j)
      for (int k = 1; k <= c; ++k) p *= static_cast<double>(i + j + k - 1) / (i + j + k - 2);
  return p;
}

}  // namespace

TEST_CASE("box counts match MacMahon") {
  for (int c = 1; c <= 3; ++c)
    for (int d = 1; d <= 3; ++d)
      for (int h = 0; h <= 3; ++h) {
        const long n = count_configurations({{Partition{}, c, d}, h});
        CHECK(static_cast<double>(n) == doctest::Approx(macmahon(c, d, h)));
      }
}

TEST_CASE("skew count on a corner domain") {
  // three cells (1,2), (2,1), (2,2) with (2,2) below both: values a, b <= h and c <= min(a, b)
  for (int h = 0; h <= 5; ++h) {
    long expect = 0;
    for (int a = 0; a <= h; ++a)
      for (int b = 0; b <= h; ++b) expect += std::min(a, b) + 1;
    CHECK(count_configurations({{Partition({1}), 2, 2}, h}) == expect);
  }
}

TEST_CASE("enumeration respects its limit") {
  CHECK_THROWS_AS(count_configurations({{Partition{}, 3, 3}, 6}, 1000), ResourceError);
}

TEST_CASE("enumerated configurations are plane partitions") {
  const EnumerationDomain dom{{Partition({2, 1}), 3, 3}, 2};
  const CellLayout lay(dom.box);
  long n = enumerate(dom, [&](const std::vector<int>& v) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      const auto& c = lay.cells()[k];
      CHECK(v[k] <= dom.h_max);
      if (c.up >= 0) CHECK(v[k] <= v[c.up]);
      if (c.left >= 0) CHECK(v[k] <= v[c.left]);
    }
  });
  CHECK(n > 0);
  CHECK(static_cast<long>(lay.cells().size()) == dom.box.cell_count());
}

TEST_CASE("property: truncated Z approaches the Cauchy product within the certified tail") {
  gen::Engine e(31);
  int checked = 0;
  for (int rep = 0; rep < 60; ++rep) {
    const BoxDomain box = gen::box(e, 3);
    if (box.cell_count() > 5) continue;
    const BackWall w = box.wall();
    const WeightSchedule s = gen::schedule(e).anchored_to(w);
    const SpecializationParams x = x_params(s, w);
    if (!finite_admissibility(x).ok) continue;
    int h = 0;
    try {
      h = choose_h_max(x, 1e-6, 60);
    } catch (const Error&) {
      continue;  // weights too close to the edge for a small cap
    }
    const EnumerationDomain dom{box, h};
    if (count_configurations(dom) > 2'000'000) continue;
    const PartitionFunction pf = partition_function(dom, s);
    const double full = std::exp(log_cauchy_partition_function(x));
    CHECK(pf.value <= full * (1 + 1e-12));
    const double missing = 1.0 - pf.value / full;
    CHECK(missing <= pf.tail_bound + 1e-12);
    CHECK(pf.tail_bound < 1e-5);
    // a smaller cap never beats the bound either
    const EnumerationDomain small{box, std::max(0, h / 2)};
    const PartitionFunction ps = partition_function(small, s);
    CHECK(1.0 - ps.value / full <= ps.tail_bound + 1e-12);
    ++checked;
  }
  CHECK(checked >= 10);
}

TEST_CASE("tail bound decreases with the cap") {
  const BoxDomain box{Partition{}, 2, 2};
  WeightSchedule s;
  s.r = 0.7;
  const SpecializationParams x = x_params(s.anchored_to(box.wall()), box.wall());
  double prev = 2.0;
  for (int h = 0; h < 40; h += 4) {
    const double t = certified_tail(x, h);
    CHECK(t <= prev);
    prev = t;
  }
  CHECK(certified_tail(x, choose_h_max(x, 1e-9)) <= 1e-9);
}

TEST_CASE("slice volume laws are normalised") {
  const EnumerationDomain dom{{Partition({1}), 2, 3}, 6};
  WeightSchedule s;
  s.r = 1.0;
  const auto law = exact_slice_volume_law(dom, s);
  CHECK(law.size() == 4);
  for (const auto& l : law) {
    double tot = 0;
    for (double p : l) tot += p;
    CHECK(tot == doctest::Approx(1.0).epsilon(1e-12));
  }
}
