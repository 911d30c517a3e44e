#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "thermo/actuator_sim.hpp"
#include "thermo/limiter.hpp"

using namespace thermo;

TEST_CASE("elongation tick from zero offset, 50 N over the limit") {
  LimiterConfig cfg;
  LimiterState s;
  s = limiter_tick(s, 250.0, 200.0, cfg);
  // d = 50; dl = 0 + min(2*50 - 0, 0.003*50) = 0.15 mm
  CHECK(s.offset == doctest::Approx(0.15).epsilon(1e-12));
}

TEST_CASE("restore tick, 50 N under the limit") {
  LimiterConfig cfg;
  LimiterState s;
  s.offset = 0.15;
  s = limiter_tick(s, 150.0, 200.0, cfg);
  // d = 50; dl = 0.15 + max(-0.15, -0.001*50) = 0.10 mm
  CHECK(s.offset == doctest::Approx(0.10).epsilon(1e-12));
}

TEST_CASE("at or under the limit with zero offset stays at zero") {
  LimiterConfig cfg;
  LimiterState s;
  for (double f : {0.0, 100.0, 199.9, 200.0}) {
    const LimiterState next = limiter_tick(s, f, 200.0, cfg);
    CHECK(next.offset == 0.0);
  }
}

TEST_CASE("restore branch floors at zero instead of undershooting") {
  LimiterConfig cfg;
  LimiterState s;
  s.offset = 0.01;
  // d = 100 means -0.1 requested, but the offset is only 0.01.
  s = limiter_tick(s, 100.0, 200.0, cfg);
  CHECK(s.offset == 0.0);
}

TEST_CASE("offset is never negative under randomized traffic") {
  LimiterConfig cfg;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> tension(0.0, 300.0);
  std::uniform_real_distribution<double> limit(10.0, 300.0);
  LimiterState s;
  for (int tick = 0; tick < 100000; ++tick) {
    s = limiter_tick(s, tension(rng), limit(rng), cfg);
    CHECK(s.offset >= 0.0);
  }
}

TEST_CASE("per-tick slew is bounded by the rate coefficients") {
  LimiterConfig cfg;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> tension(0.0, 300.0);
  std::uniform_real_distribution<double> limit(10.0, 300.0);
  LimiterState s;
  for (int tick = 0; tick < 100000; ++tick) {
    const double f = tension(rng);
    const double f_limit = limit(rng);
    const double d = std::abs(f - f_limit);
    const LimiterState next = limiter_tick(s, f, f_limit, cfg);
    const double delta = next.offset - s.offset;
    if (f > f_limit) {
      // Elongation grows by at most rate_plus*d and never past the gain
      // target; from above the target it snaps down exactly onto it.
      CHECK(delta <= cfg.rate_plus * d + 1e-12);
      if (s.offset > cfg.gain * d) {
        CHECK(next.offset == doctest::Approx(cfg.gain * d).epsilon(1e-12));
      } else {
        CHECK(next.offset <= cfg.gain * d + 1e-12);
      }
    } else {
      CHECK(delta <= 0.0);
      CHECK(delta >= -cfg.rate_minus * d - 1e-12);
      CHECK(delta >= -s.offset - 1e-12);
    }
    s = next;
  }
}

TEST_CASE("constant excess drives the offset to the gain fixed point") {
  LimiterConfig cfg;
  LimiterState s;
  const double f = 230.0, f_limit = 200.0;  // constant d = 30
  for (int tick = 0; tick < 2000; ++tick) {
    s = limiter_tick(s, f, f_limit, cfg);
  }
  CHECK(s.offset == doctest::Approx(cfg.gain * 30.0).epsilon(1e-9));
  // Fixed point: one more tick does not move it.
  const LimiterState next = limiter_tick(s, f, f_limit, cfg);
  CHECK(next.offset == doctest::Approx(s.offset).epsilon(1e-12));
}

TEST_CASE("apply_offset adds the elongation to the reference") {
  LimiterState s;
  CHECK(apply_offset(-16.0, s) == -16.0);
  s.offset = 0.15;
  CHECK(apply_offset(-16.0, s) == doctest::Approx(-15.85).epsilon(1e-12));
  LimiterState bigger;
  bigger.offset = 0.30;
  CHECK(apply_offset(-16.0, bigger) > apply_offset(-16.0, s));
}

TEST_CASE("closed loop against the elastic muscle settles on the limit") {
  // f = stiffness * max(0, -(l_ref + dl)); with l_ref = -16 mm and
  // stiffness 12.5 N/mm the unlimited tension is 200 N. A 150 N ceiling
  // should be enforced without oscillation beyond 5 N.
  LimiterConfig cfg;
  ElasticMuscle muscle;
  const double l_ref = -16.0;
  const double f_limit = 150.0;
  LimiterState s;
  double tension = elastic_tension(muscle, apply_offset(l_ref, s));
  REQUIRE(tension == doctest::Approx(200.0));

  double settle_min = 1e9, settle_max = -1e9;
  const int total_ticks = 25000;  // 200 s at 8 ms
  for (int tick = 0; tick < total_ticks; ++tick) {
    s = limiter_tick(s, tension, f_limit, cfg);
    tension = elastic_tension(muscle, apply_offset(l_ref, s));
    if (tick >= total_ticks / 2) {
      settle_min = std::min(settle_min, tension);
      settle_max = std::max(settle_max, tension);
    }
  }
  CHECK(settle_max - settle_min < 5.0);
  CHECK(tension == doctest::Approx(f_limit).epsilon(0.05));
}

TEST_CASE("raising the ceiling lets the muscle re-tighten") {
  LimiterConfig cfg;
  ElasticMuscle muscle;
  const double l_ref = -16.0;
  LimiterState s;
  double tension = elastic_tension(muscle, apply_offset(l_ref, s));
  for (int tick = 0; tick < 25000; ++tick) {
    s = limiter_tick(s, tension, 120.0, cfg);
    tension = elastic_tension(muscle, apply_offset(l_ref, s));
  }
  REQUIRE(tension < 125.0);
  for (int tick = 0; tick < 50000; ++tick) {
    s = limiter_tick(s, tension, 180.0, cfg);
    tension = elastic_tension(muscle, apply_offset(l_ref, s));
  }
  CHECK(tension == doctest::Approx(180.0).epsilon(0.05));
}
