#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "lozenge/asymptotics.hpp"
#include "lozenge/errors.hpp"
#include "lozenge/turning.hpp"

using namespace lozenge;

TEST_CASE("property: first level is the centred normal density") {
  gen::Engine e(81);
  for (int rep = 0; rep < 30; ++rep) {
    const double s = -gen::uniform(e, 0.1, 2.0), x = gen::uniform(e, -2, 2);
    const double expect = std::exp(-x * x / (2 * std::abs(s))) / std::sqrt(2 * M_PI * std::abs(s));
    const TurningIntegralResult r = turning_integral(1, 0, x, 1, 0, x, s);
    CHECK(r.value == doctest::Approx(expect).epsilon(1e-8));
    CHECK(std::abs(r.imag) < 1e-8);
  }
}

TEST_CASE("level n density integrates to n") {
  const double s = -0.6;
  for (int n = 1; n <= 4; ++n) {
    const double sd = std::sqrt(std::abs(s) * (n + 3));
    const int steps = 160;
    const double lo = -4 * sd, hi = 4 * sd, dx = (hi - lo) / steps;
    double total = 0;
    for (int i = 0; i <= steps; ++i) {
      const double x = lo + i * dx;
      const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
      total += w * dx * turning_integral(n, 0, x, n, 0, x, s).value;
    }
    CHECK(total == doctest::Approx(n).epsilon(1e-4));
  }
}

TEST_CASE("no pole at zeta means no contribution") {
  CHECK(turning_integral(0, 0, 0.3, 1, 0, -0.2, -0.5).value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(turning_integral(-1, 0, 0.3, 2, 0, 0.1, -0.5).value) < 1e-12);
  CHECK(std::abs(turning_integral(1, -1, 0.3, 2, 0, 0.1, -0.5, 0.4).value) < 1e-12);
}

TEST_CASE("residue term") {
  CHECK(turning_residue(1, 0, 0.5, 1, 0, 0.1) == 0.0);
  CHECK(turning_residue(2, 0, 0.5, 1, 0, 0.1) == doctest::Approx(1.0));
  CHECK(turning_residue(2, 0, 0.1, 1, 0, 0.5) == 0.0);
  CHECK(turning_residue(2, 0, 0.3, 1, 0, 0.3) == doctest::Approx(0.5));
  // 1/w^2: residue of e^{-d w} / w^2 is -d
  CHECK(turning_residue(3, 0, 0.7, 1, 0, 0.2) == doctest::Approx(-0.5));
}

TEST_CASE("pinned weight counts") {
  for (int t = 0; t <= 10; ++t) {
    CHECK(turning_exponent(t, TurningEdge::bottom, SliceParity::odd) == (t + 1) / 2);
    CHECK(turning_exponent(t, TurningEdge::top, SliceParity::odd) == t / 2);
    CHECK(turning_exponent(t, TurningEdge::bottom, SliceParity::even) == t / 2);
    CHECK(turning_exponent(t, TurningEdge::top, SliceParity::even) == (t + 1) / 2);
    // each step pins one weight to one of the two points
    CHECK(turning_exponent(t, TurningEdge::bottom, SliceParity::odd) +
              turning_exponent(t, TurningEdge::top, SliceParity::odd) ==
          t);
  }
}

TEST_CASE("property: slices with equal counts carry the same kernel") {
  const LimitGeometry g = LimitGeometry::bounded(1.0, 2.0, 1.5);
  gen::Engine e(82);
  for (int rep = 0; rep < 20; ++rep) {
    const double h1 = gen::uniform(e, -1, 1), h2 = gen::uniform(e, -1, 1);
    // t_hat 1 and 2 share one bottom weight on odd parity; t_hat 4 sits above both
    const double a = turning_kernel(1, 4, h1, h2, TurningEdge::bottom, SliceParity::odd, g);
    const double b = turning_kernel(2, 4, h1, h2, TurningEdge::bottom, SliceParity::odd, g);
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
  }
}

TEST_CASE("property: zero gamma reduces to the single family kernel") {
  const LimitGeometry g = LimitGeometry::bounded(1.0, 2.0, 1.0);
  const double s = intermediate_turning_s(g);
  CHECK(s < 0);
  gen::Engine e(83);
  for (int rep = 0; rep < 20; ++rep) {
    const int t1 = gen::uniform_int(e, 1, 4), t2 = gen::uniform_int(e, 1, 4);
    const double h1 = gen::uniform(e, -1, 1), h2 = gen::uniform(e, -1, 1);
    double b = turning_integral(t1, 0, h1, t2, 0, h2, s).value;
    if (t1 > t2) b += turning_residue(t1, 0, h1, t2, 0, h2);
    CHECK(turning_kernel_intermediate(t1, t2, h1, h2, 0.0, SliceParity::odd, g) ==
          doctest::Approx(b).epsilon(1e-10));
  }
}
