#include <doctest.h>

#include <cmath>

#include "thermo/anomaly.hpp"

using namespace thermo;

namespace {

ThermalParams params_with(std::array<double, 5> learned) {
  ThermalParams p = params_from_spec(MotorSpec::ec4pole_90w(), 30.0);
  p.learned = learned;
  return p;
}

}  // namespace

TEST_CASE("score is zero when parameters equal the reference") {
  const ThermalParams p = params_with({0.3, -0.2, 0.1, 0.4, 0.7});
  const AnomalyConfig cfg = anomaly_arm(p);
  CHECK(anomaly_score(p, cfg) == 0.0);
  CHECK(anomaly_check(p, cfg) == Verdict::Normal);
}

TEST_CASE("uniform unit drift on all four parameters scores one") {
  const AnomalyConfig cfg = anomaly_arm(params_with({0, 0, 0, 0, 0}));
  const ThermalParams p = params_with({1.0, 1.0, 1.0, 1.0, 0.0});
  CHECK(anomaly_score(p, cfg) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("a single drift of two scores one") {
  const AnomalyConfig cfg = anomaly_arm(params_with({0, 0, 0, 0, 0}));
  const ThermalParams p = params_with({2.0, 0.0, 0.0, 0.0, 0.0});
  CHECK(anomaly_score(p, cfg) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("score exactly at the threshold stays Normal") {
  const AnomalyConfig cfg = anomaly_arm(params_with({0, 0, 0, 0, 0}), 1.0);
  const ThermalParams p = params_with({2.0, 0.0, 0.0, 0.0, 0.0});
  REQUIRE(anomaly_score(p, cfg) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(anomaly_check(p, cfg) == Verdict::Normal);
}

TEST_CASE("score just above the threshold flags Anomaly") {
  const AnomalyConfig cfg = anomaly_arm(params_with({0, 0, 0, 0, 0}));
  const ThermalParams p = params_with({1.1, 1.1, 1.1, 1.1, 0.0});
  CHECK(anomaly_score(p, cfg) == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(anomaly_check(p, cfg) == Verdict::Anomaly);
}

TEST_CASE("P4 drifting to 2.1 from a zero reference flags Anomaly") {
  const AnomalyConfig cfg = anomaly_arm(params_with({0, 0, 0, 0, 0}));
  const ThermalParams p = params_with({0.0, 0.0, 0.0, 2.1, 0.0});
  CHECK(anomaly_score(p, cfg) ==
        doctest::Approx(std::sqrt(2.1 * 2.1 / 4.0)).epsilon(1e-12));
  CHECK(anomaly_score(p, cfg) == doctest::Approx(1.05).epsilon(1e-12));
  CHECK(anomaly_check(p, cfg) == Verdict::Anomaly);
}

TEST_CASE("re-arming resets the score to zero") {
  AnomalyConfig cfg = anomaly_arm(params_with({0, 0, 0, 0, 0}));
  const ThermalParams drifted = params_with({1.5, -1.5, 1.5, -1.5, 0.0});
  REQUIRE(anomaly_check(drifted, cfg) == Verdict::Anomaly);
  cfg = anomaly_arm(drifted, cfg.threshold);
  CHECK(anomaly_score(drifted, cfg) == 0.0);
  CHECK(anomaly_check(drifted, cfg) == Verdict::Normal);
}

TEST_CASE("score ignores P5 entirely") {
  const AnomalyConfig cfg = anomaly_arm(params_with({0.1, 0.2, 0.3, 0.4, 0}));
  for (double p5 : {-5.0, -0.5, 0.0, 0.5, 5.0}) {
    const ThermalParams p = params_with({0.1, 0.2, 0.3, 0.4, p5});
    CHECK(anomaly_score(p, cfg) == 0.0);
    CHECK(anomaly_check(p, cfg) == Verdict::Normal);
  }
}

TEST_CASE("score is symmetric in drift direction and nonnegative") {
  const AnomalyConfig cfg = anomaly_arm(params_with({0, 0, 0, 0, 0}));
  const ThermalParams up = params_with({0.4, 0.3, 0.2, 0.1, 0.0});
  const ThermalParams down = params_with({-0.4, -0.3, -0.2, -0.1, 0.0});
  CHECK(anomaly_score(up, cfg) == anomaly_score(down, cfg));
  CHECK(anomaly_score(up, cfg) > 0.0);
}

TEST_CASE("custom thresholds are honored") {
  const AnomalyConfig tight = anomaly_arm(params_with({0, 0, 0, 0, 0}), 0.1);
  const ThermalParams p = params_with({0.2, 0.2, 0.2, 0.2, 0.0});
  CHECK(anomaly_check(p, tight) == Verdict::Anomaly);
  const AnomalyConfig loose = anomaly_arm(params_with({0, 0, 0, 0, 0}), 3.0);
  CHECK(anomaly_check(p, loose) == Verdict::Normal);
}
