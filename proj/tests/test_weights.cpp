#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "lozenge/errors.hpp"
#include "lozenge/weights.hpp"

using namespace lozenge;

TEST_CASE("regime and anchor names roundtrip") {
  for (Regime r : {Regime::homogeneous, Regime::periodic, Regime::intermediate})
    CHECK(regime_from_string(to_string(r)) == r);
  for (ParityAnchor a : {ParityAnchor::absolute, ParityAnchor::wall_relative})
    CHECK(anchor_from_string(to_string(a)) == a);
  CHECK_THROWS_AS(regime_from_string("cubic"), ConfigError);
  CHECK_THROWS_AS(anchor_from_string("left"), ConfigError);
}

TEST_CASE("schedule validation") {
  WeightSchedule s;
  s.r = 0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.r = 0.1;
  s.regime = Regime::periodic;
  s.alpha = 0.9;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.regime = Regime::intermediate;
  s.gamma = -1;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("periodic weights alternate by alpha squared") {
  WeightSchedule s;
  s.regime = Regime::periodic;
  s.r = 0.3;
  s.alpha = 1.5;
  s.anchor = ParityAnchor::absolute;
  for (int t = -6; t <= 6; ++t) {
    CHECK(s.q(t) * s.q(t + 1) == doctest::Approx(std::exp(-2 * s.r)));
    const double ratio = s.odd_slot(t) ? s.alpha * s.alpha : 1.0 / (s.alpha * s.alpha);
    CHECK(s.q(t) / s.q(t + 1) == doctest::Approx(ratio));
    CHECK(q_eval(s, t) == s.q(t));
  }
  CHECK(s.odd_slot(1));
  CHECK(s.odd_slot(-1));
  CHECK_FALSE(s.odd_slot(0));
}

TEST_CASE("wall relative anchor puts an odd slot at u_0") {
  gen::Engine e(21);
  for (int rep = 0; rep < 50; ++rep) {
    const BackWall w = gen::box(e, 6).wall();
    WeightSchedule s;
    s.regime = Regime::intermediate;
    s.gamma = 0.7;
    const WeightSchedule a = s.anchored_to(w);
    CHECK(a.odd_slot(w.u0()));
    CHECK_FALSE(a.odd_slot(w.u0() + 1));
    CHECK(a.odd_slot(w.u0() + 2));
    CHECK(a.q(w.u0() + 1) == doctest::Approx(std::exp(-s.r + s.gamma * std::sqrt(s.r))));
    CHECK(a.q(w.u0() + 2) == doctest::Approx(std::exp(-s.r - s.gamma * std::sqrt(s.r))));
  }
}

TEST_CASE("property: specialization parameters satisfy the q-ratio relations") {
  gen::Engine e(22);
  for (int rep = 0; rep < 200; ++rep) {
    const BoxDomain box = gen::box(e, 6);
    const BackWall w = box.wall();
    const WeightSchedule s = gen::schedule(e).anchored_to(w);
    const double gauge = gen::uniform(e, -2, 2);
    const SpecializationParams x = x_params(s, w, gauge);
    CHECK(x.log_gauge() == gauge);
    std::size_t rising = 0, falling = 0;
    for (int m = 2 * w.u0() + 1; m < 2 * w.un(); m += 2) {
      CHECK(x.log_x_minus(m) == -x.log_x_plus(m));
      CHECK(x.slope(m) == w.slope_at_half(m));
      (x.slope(m) > 0 ? rising : falling)++;
      if (m + 2 < 2 * w.un())
        CHECK(x.log_x_plus(m + 2) - x.log_x_plus(m) == doctest::Approx(s.log_q((m + 1) / 2)));
    }
    CHECK(rising == x.d_minus().size());
    CHECK(falling == x.d_plus().size());
    CHECK(rising == static_cast<std::size_t>(box.c));
    CHECK(falling == static_cast<std::size_t>(box.d));
    CHECK_THROWS_AS(x.log_x_plus(2 * w.u0() - 1), DomainError);
    CHECK_THROWS_AS(x.log_x_plus(2 * w.u0() + 2), DomainError);
  }
}

TEST_CASE("finite admissibility is gauge invariant and finds the worst pair") {
  gen::Engine e(23);
  for (int rep = 0; rep < 100; ++rep) {
    const BackWall w = gen::box(e, 6).wall();
    const WeightSchedule s = gen::schedule(e).anchored_to(w);
    const FiniteAdmissibility a = finite_admissibility(x_params(s, w));
    const FiniteAdmissibility b = finite_admissibility(x_params(s, w, 3.0));
    CHECK(a.ok == b.ok);
    CHECK(a.max_log_pair == doctest::Approx(b.max_log_pair));
    // brute force over rising-before-falling pairs
    const SpecializationParams x = x_params(s, w);
    double worst = -1e300;
    for (int i = 2 * w.u0() + 1; i < 2 * w.un(); i += 2)
      for (int j = i + 2; j < 2 * w.un(); j += 2)
        if (x.slope(i) > 0 && x.slope(j) < 0) worst = std::max(worst, x.log_x_minus(i) + x.log_x_plus(j));
    CHECK(a.max_log_pair == doctest::Approx(worst));
    CHECK(a.ok == (worst < 0));
  }
}

TEST_CASE("staircase admissibility") {
  StaircaseSpec sp;  // u = 1, v = 2
  WeightSchedule s;
  s.regime = Regime::periodic;
  s.r = 0.1;
  s.alpha = 1.5;
  const AdmissibilityReport ok = admissibility(s, sp);
  CHECK(ok.ok);
  CHECK(ok.margin == doctest::Approx(1 - std::exp(-2.0) * 1.5));
  s.alpha = 8.0;
  const AdmissibilityReport bad = admissibility(s, sp);
  CHECK_FALSE(bad.strip_ok);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.detail.empty());
}
