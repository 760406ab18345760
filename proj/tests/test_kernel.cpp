#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "lozenge/enumeration.hpp"
#include "lozenge/errors.hpp"
#include "lozenge/kernel.hpp"

using namespace lozenge;

namespace {

LatticePoint random_site(gen::Engine& e, const BackWall& w) {
  const int t = gen::uniform_int(e, w.u0() + 1, w.un() - 1);
  const int parity = ((w.eval(t) + 1) % 2 + 2) % 2;
  return {t, 2 * gen::uniform_int(e, -3, 4) + parity};
}

}  // namespace

TEST_CASE("lattice sites need the wall parity and an interior slice") {
  const BackWall w = BoxDomain{Partition{}, 1, 1}.wall();
  CHECK(is_lattice_site(w, {0, 1}));
  CHECK(is_lattice_site(w, {0, -1}));
  CHECK_FALSE(is_lattice_site(w, {0, 0}));
  CHECK_FALSE(is_lattice_site(w, {1, 0}));
  CHECK_FALSE(is_lattice_site(w, {-1, 0}));
}

TEST_CASE("single cell kernel is the geometric law") {
  // one cell with weight q: P(pi >= n) = q^n, lozenge at 2h = 2pi - 1
  const BoxDomain box{Partition{}, 1, 1};
  WeightSchedule s;
  s.r = -std::log(0.4);
  const SpecializationParams x = x_params(s.anchored_to(box.wall()), box.wall());
  for (int n = 0; n <= 6; ++n) {
    const KernelValue k = kernel(x, {0, 2 * n - 1}, {0, 2 * n - 1});
    CHECK(k.value.real() == doctest::Approx(std::pow(0.4, n) * 0.6).epsilon(1e-9));
    CHECK(std::abs(k.value.imag()) < 1e-10);
  }
  for (int n = 1; n <= 5; ++n)
    CHECK(kernel(x, {0, -2 * n - 1}, {0, -2 * n - 1}).value.real() == doctest::Approx(1.0));
}

TEST_CASE("property: kernel determinants match enumeration on random tiny domains") {
  gen::Engine e(41);
  int checked = 0;
  for (int rep = 0; rep < 40 && checked < 12; ++rep) {
    const BoxDomain box = gen::box(e, 3);
    if (box.cell_count() > 4) continue;
    const BackWall w = box.wall();
    const WeightSchedule s = gen::schedule(e).anchored_to(w);
    const SpecializationParams x = x_params(s, w);
    if (!finite_admissibility(x).ok) continue;
    int h = 0;
    try {
      h = choose_h_max(x, 1e-11, 80);
    } catch (const Error&) {
      continue;  // weights too close to the edge for a small cap
    }
    const EnumerationDomain dom{box, h};
    if (count_configurations(dom) > 3'000'000) continue;
    for (int k = 1; k <= 3; ++k) {
      std::vector<LatticePoint> pts;
      while (static_cast<int>(pts.size()) < k) {
        const LatticePoint p = random_site(e, w);
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
      }
      const ExactCorrelation ex = exact_correlation(dom, s, pts);
      const double kv = correlations(x, pts);
      CHECK(std::abs(kv - ex.value) < 1e-8 + ex.bound);
    }
    ++checked;
  }
  CHECK(checked >= 8);
}

TEST_CASE("correlations are symmetric in the points") {
  const BoxDomain box{Partition({1}), 2, 2};
  WeightSchedule s;
  s.regime = Regime::periodic;
  s.r = 0.4;
  s.alpha = 1.2;
  const SpecializationParams x = x_params(s.anchored_to(box.wall()), box.wall());
  const BackWall& w = x.wall();
  auto site = [&](int t, int k) { return LatticePoint{t, 2 * k + ((w.eval(t) + 1) % 2 + 2) % 2}; };
  const std::vector<LatticePoint> a{site(-1, 0), site(0, 0), site(1, -1)};
  const std::vector<LatticePoint> b{a[2], a[0], a[1]};
  CHECK(correlations(x, a) == doctest::Approx(correlations(x, b)).epsilon(1e-10));
  CHECK(std::abs(correlations(x, {a[1], a[1]})) < 1e-10);
}

TEST_CASE("kernel rejects off-lattice points") {
  const BoxDomain box{Partition{}, 1, 1};
  WeightSchedule s;
  const SpecializationParams x = x_params(s.anchored_to(box.wall()), box.wall());
  CHECK_THROWS_AS(kernel(x, {0, 0}, {0, 1}), DomainError);
}

TEST_CASE("real determinant") {
  CHECK(real_determinant({{cplx(2, 0), cplx(1, 0)}, {cplx(1, 0), cplx(3, 0)}}) == doctest::Approx(5.0));
  CHECK(real_determinant({}) == 1.0);
  CHECK_THROWS(real_determinant({{cplx(0, 1)}}));
}
