#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "lozenge/asymptotics.hpp"
#include "lozenge/errors.hpp"

using namespace lozenge;

namespace {

const LimitGeometry kG = LimitGeometry::bounded(1.0, 2.0, 1.5);

cplx random_upper(gen::Engine& e) { return std::polar(gen::uniform(e, 0.3, 4.0), gen::uniform(e, 0.2, 2.9)); }

}  // namespace

TEST_CASE("geometry validation and back wall") {
  CHECK_THROWS(LimitGeometry::bounded(1.0, 0.5, 1.0).validate());
  CHECK_THROWS(LimitGeometry::bounded(1.0, 2.0, 0.5).validate());
  CHECK_THROWS(LimitGeometry::bounded(0.5, 2.0, 3.0).validate());  // e^{-2u} alpha >= 1
  CHECK(kG.back_wall(0.0) == doctest::Approx(-1.0));
  CHECK(kG.back_wall(1.5) == doctest::Approx(-1.5));
  CHECK(kG.back_wall(-1.5) == doctest::Approx(-1.5));
}

TEST_CASE("property: z S' is the derivative of S and d2S of z S'") {
  gen::Engine e(71);
  for (int rep = 0; rep < 200; ++rep) {
    const double tau = gen::uniform(e, -1.9, 1.9), chi = gen::uniform(e, -3, 1);
    const cplx z = random_upper(e);
    const cplx h = 1e-5 * z;
    const cplx ds = z * (action_S(z + h, tau, chi, kG) - action_S(z - h, tau, chi, kG)) / (2.0 * h);
    CHECK(std::abs(ds - action_dS(z, tau, chi, kG)) < 1e-6 * (1 + std::abs(ds)));
    const cplx d2 = (action_dS(z + h, tau, chi, kG) - action_dS(z - h, tau, chi, kG)) / (2.0 * h);
    CHECK(std::abs(d2 - action_d2S(z, tau, chi, kG)) < 1e-6 * (1 + std::abs(d2)));
  }
}

TEST_CASE("property: liquid points have one conjugate pair of critical points") {
  gen::Engine e(72);
  int liquid = 0;
  for (int rep = 0; rep < 400; ++rep) {
    const double tau = gen::uniform(e, -1.95, 1.95), chi = gen::uniform(e, -3.5, 1.0);
    const CriticalPointSet cp = critical_points(tau, chi, kG);
    CHECK((cp.non_real == 0 || cp.non_real == 2));
    const Phase ph = classify(tau, chi, kG);
    if (ph != Phase::liquid) continue;
    ++liquid;
    CHECK(cp.non_real == 2);
    const cplx zc = liquid_critical_point(tau, chi, kG);
    CHECK(zc.imag() > 0);
    CHECK(std::abs(action_dS(zc, tau, chi, kG)) < 1e-8);
    const double rho = bulk_density(tau, chi, kG);
    CHECK(rho == doctest::Approx(std::arg(zc) / M_PI));
    CHECK(rho > 0);
    CHECK(rho < 1);
  }
  CHECK(liquid > 40);
}

TEST_CASE("frozen regions are far from the wall and inside the sea") {
  CHECK(classify(0.0, 2.0, kG) == Phase::frozen);
  CHECK(classify(0.0, -5.0, kG) == Phase::frozen);
  CHECK(classify(0.5, -0.5, kG) == Phase::liquid);
}

TEST_CASE("property: frozen boundary points carry a double real critical point") {
  for (const LimitGeometry& g : {kG, LimitGeometry::triangular(1.0, 1.5), LimitGeometry::unbounded(1.0, 1.5)}) {
    const auto pts = trace_frozen_boundary(g, 400);
    CHECK(pts.size() > 100);
    int checked = 0;
    for (const BoundaryPoint& p : pts) {
      if (!std::isfinite(p.tau) || !std::isfinite(p.chi) || std::abs(p.chi) > 20) continue;
      const double s1 = std::abs(action_dS(p.z, p.tau, p.chi, g));
      const double s2 = std::abs(action_d2S(p.z, p.tau, p.chi, g)) * std::abs(p.z);
      CHECK(s1 < 1e-7);
      CHECK(s2 < 1e-6);
      ++checked;
    }
    CHECK(checked > 50);
  }
}

TEST_CASE("turning points are critical and the Gaussian coefficient matches S''") {
  const TurningPointData tp = turning_points(kG);
  CHECK(tp.side == doctest::Approx(2.0));
  CHECK(tp.z_bottom == doctest::Approx(std::exp(2.0) * std::sqrt(1.5)));
  CHECK(tp.z_top == doctest::Approx(std::exp(2.0) / std::sqrt(1.5)));
  CHECK(tp.chi_bottom < tp.chi_top);
  for (auto [z, chi, s] : {std::tuple{tp.z_bottom, tp.chi_bottom, tp.s_bottom},
                           std::tuple{tp.z_top, tp.chi_top, tp.s_top}}) {
    const double tau = tp.side;
    CHECK(std::abs(action_dS(z, tau, chi, kG)) < 1e-10);
    const cplx h(0.0, 1e-4 * z);
    const cplx d = (action_dS(z + h, tau, chi, kG) - action_dS(z - h, tau, chi, kG)) / (2.0 * h);
    CHECK(s == doctest::Approx(z * d.real()).epsilon(1e-6));
  }
  CHECK(tp.s_bottom == doctest::Approx(-0.17316).epsilon(1e-4));
  CHECK_THROWS_AS(turning_points(LimitGeometry::unbounded(1.0, 1.5)), DomainError);
}

TEST_CASE("tentacle asymptote approaches the true critical point") {
  for (double tau : {1.0, -1.0}) {
    for (double chi : {4.0, 6.0, 8.0}) {
      const cplx zt = tentacle_critical_point(tau, chi, kG);
      const cplx zc = liquid_critical_point(tau, chi, kG);
      CHECK(std::abs(zt - zc) / std::abs(zc) < 10 * std::exp(-chi));
    }
  }
}

TEST_CASE("bulk kernel diagonal averages to the density") {
  const LimitGeometry g = LimitGeometry::bounded(1.0, 2.0, 1.0);
  const double tau = 0.3, chi = -0.8;
  const double a = bulk_kernel(tau, chi, 0, 0, SliceParity::even, g);
  const double b = bulk_kernel(tau, chi, 0, 0, SliceParity::odd, g);
  CHECK(a == doctest::Approx(bulk_density(tau, chi, g)));
  CHECK(b == doctest::Approx(bulk_density(tau, chi, g)));
  CHECK_THROWS_AS(bulk_kernel(tau, chi, 0, 1, SliceParity::even, g), DomainError);
}
