#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "thermo/thermal_model.hpp"

using namespace thermo;

namespace {

/// Independent straight-line evaluation of the unparameterized datasheet
/// equations, written directly from (C1, C2, R1, R2, K, ambient) so the
/// reduction property does not share code with the library.
Derivatives datasheet_rhs(double c1, double c2, double f, double C1,
                          double C2, double R1, double R2, double K,
                          double ambient) {
  Derivatives d{};
  d.dcore = (K * f * f - (c1 - c2) / R1) / C1;
  d.dhousing = ((c1 - c2) / R1 - (c2 - ambient) / R2) / C2;
  return d;
}

ThermalParams ec4pole_params() {
  return params_from_spec(MotorSpec::ec4pole_90w(), 30.0);
}

}  // namespace

TEST_CASE("params_from_spec derives W1..W5 for the EC-4pole 22 90W") {
  const ThermalParams p = ec4pole_params();
  CHECK(p.base[0] == doctest::Approx(2.97e-4 / 2.10).epsilon(1e-12));
  CHECK(p.base[1] == doctest::Approx(1.20 * 2.10).epsilon(1e-12));
  CHECK(p.base[2] == doctest::Approx(1.20 * 29.0).epsilon(1e-12));
  CHECK(p.base[3] == doctest::Approx(10.3 * 29.0).epsilon(1e-12));
  CHECK(p.base[4] == 30.0);
  for (double learned : p.learned) CHECK(learned == 0.0);
}

TEST_CASE("params_from_spec derives W1..W5 for the EC 16 60W") {
  const ThermalParams p = params_from_spec(MotorSpec::ec16_60w(), 30.0);
  CHECK(p.base[0] == doctest::Approx(4.50e-5 / 1.19).epsilon(1e-12));
  CHECK(p.base[1] == doctest::Approx(4.30 * 1.19).epsilon(1e-12));
  CHECK(p.base[2] == doctest::Approx(4.30 * 12.2).epsilon(1e-12));
  CHECK(p.base[3] == doctest::Approx(39.5 * 12.2).epsilon(1e-12));
  CHECK(p.base[4] == 30.0);
}

TEST_CASE("non-positive datasheet constants are rejected") {
  MotorSpec spec = MotorSpec::ec4pole_90w();
  spec.heat_capacity_core = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  CHECK_THROWS_AS(params_from_spec(spec, 30.0), std::invalid_argument);
}

TEST_CASE("k_from_raw composes the drivetrain constants") {
  RawMotorConstants ones{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
  CHECK(k_from_raw(ones) == doctest::Approx(1.0).epsilon(1e-15));

  RawMotorConstants doubled = ones;
  doubled.pulley_radius = 2.0;
  CHECK(k_from_raw(doubled) == doctest::Approx(4.0).epsilon(1e-15));

  // Hand arithmetic: K = R_e * (D_pulley / (E_gear*D_gear*E_motor*K_t))^2
  //                    = 0.5 * (0.01 / 0.46980)^2
  RawMotorConstants raw{0.5, 0.02, 0.9, 0.9, 29.0, 0.01};
  const double denom = 0.9 * 29.0 * 0.9 * 0.02;
  CHECK(k_from_raw(raw) ==
        doctest::Approx(0.5 * (0.01 / denom) * (0.01 / denom))
            .epsilon(1e-12));

  RawMotorConstants bad = ones;
  bad.torque_constant = 0.0;
  CHECK_THROWS_AS(k_from_raw(bad), std::invalid_argument);
}

TEST_CASE("capacity_from_time_constant is T/R") {
  CHECK(capacity_from_time_constant(2.52, 1.20) ==
        doctest::Approx(2.10).epsilon(1e-12));
  CHECK(capacity_from_time_constant(7.5, 7.5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(capacity_from_time_constant(0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(capacity_from_time_constant(1.0, -2.0),
                  std::invalid_argument);
}

TEST_CASE("derivatives at global equilibrium vanish") {
  const ThermalParams p = ec4pole_params();
  const Derivatives d = derivatives({30.0, 30.0}, 0.0, p);
  CHECK(d.dcore == 0.0);
  CHECK(d.dhousing == 0.0);
}

TEST_CASE("derivatives match hand arithmetic at f=200 from rest") {
  const ThermalParams p = ec4pole_params();
  const Derivatives d = derivatives({30.0, 30.0}, 200.0, p);
  // dc1 = (2.97e-4 / 2.10) * 200^2, dc2 = 0 with no temperature gaps.
  CHECK(d.dcore == doctest::Approx(5.657142857142857).epsilon(1e-12));
  CHECK(d.dhousing == 0.0);
}

TEST_CASE("derivatives match hand arithmetic for a hot core") {
  const ThermalParams p = ec4pole_params();
  const Derivatives d = derivatives({80.0, 40.0}, 100.0, p);
  // dc1 = 1.4142857e-4*1e4 - 40/2.52; dc2 = 40/34.8 - 10/298.7
  CHECK(d.dcore ==
        doctest::Approx(2.97e-4 / 2.10 * 1e4 - 40.0 / 2.52).epsilon(1e-12));
  CHECK(d.dhousing ==
        doctest::Approx(40.0 / 34.8 - 10.0 / 298.7).epsilon(1e-12));
  CHECK(d.dcore == doctest::Approx(-14.45873).epsilon(1e-6));
  CHECK(d.dhousing == doctest::Approx(1.115947).epsilon(1e-6));
}

TEST_CASE("one Euler step from rest at f=200") {
  const ThermalParams p = ec4pole_params();
  const ThermalState next = step({30.0, 30.0}, 200.0, p, 0.02);
  CHECK(next.core == doctest::Approx(30.113142857142857).epsilon(1e-12));
  CHECK(next.housing == 30.0);
}

TEST_CASE("step holds the parameterized equilibrium") {
  ThermalParams p = ec4pole_params();
  p.learned = {0.3, -0.2, 0.1, 0.4, 0.25};
  const double ambient = p.base[4] * (1.0 + p.learned[4]);
  const ThermalState next = step({ambient, ambient}, 0.0, p, 0.5);
  CHECK(next.core == ambient);
  CHECK(next.housing == ambient);
}

TEST_CASE("step is a pure function") {
  const ThermalParams p = ec4pole_params();
  const ThermalState a = step({55.0, 42.0}, 120.0, p, 0.02);
  const ThermalState b = step({55.0, 42.0}, 120.0, p, 0.02);
  CHECK(a.core == b.core);
  CHECK(a.housing == b.housing);
}

TEST_CASE("rollout of one tension equals a single step") {
  const ThermalParams p = ec4pole_params();
  const std::vector<double> tensions{150.0};
  const auto seq = rollout({40.0, 35.0}, tensions, p, 0.02);
  REQUIRE(seq.size() == 1);
  const ThermalState one = step({40.0, 35.0}, 150.0, p, 0.02);
  CHECK(seq[0].core == one.core);
  CHECK(seq[0].housing == one.housing);
}

TEST_CASE("rollout rejects an empty tension sequence") {
  const ThermalParams p = ec4pole_params();
  CHECK_THROWS_AS(rollout({30.0, 30.0}, std::vector<double>{}, p, 0.02),
                  std::invalid_argument);
}

TEST_CASE("rollout at constant f=0 from equilibrium stays constant") {
  const ThermalParams p = ec4pole_params();
  const std::vector<double> tensions(100, 0.0);
  for (const ThermalState& s : rollout({30.0, 30.0}, tensions, p, 0.1)) {
    CHECK(s.core == 30.0);
    CHECK(s.housing == 30.0);
  }
}

TEST_CASE("long rollout at f=100 approaches the analytic fixed point") {
  const ThermalParams p = ec4pole_params();
  const std::vector<double> tensions(400000, 100.0);  // 8000 s at 0.02 s
  const ThermalState last = rollout({30.0, 30.0}, tensions, p, 0.02).back();
  // c2* = 30 + K*R2*f^2 = 60.591, c1* = c2* + K*R1*f^2 = 64.155
  CHECK(last.housing == doctest::Approx(60.591).epsilon(1e-4));
  CHECK(last.core == doctest::Approx(64.155).epsilon(1e-4));
}

TEST_CASE("steady_state closed form at P=0") {
  const ThermalParams p = ec4pole_params();
  const ThermalState rest = steady_state(0.0, p);
  CHECK(rest.core == 30.0);
  CHECK(rest.housing == 30.0);
  const ThermalState hot = steady_state(100.0, p);
  CHECK(hot.housing == doctest::Approx(30.0 + 2.97e-4 * 10.3 * 1e4)
                           .epsilon(1e-12));
  CHECK(hot.core ==
        doctest::Approx(hot.housing + 2.97e-4 * 1.20 * 1e4).epsilon(1e-12));
}

TEST_CASE("derivatives vanish at steady_state for randomized parameters") {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> tension(0.0, 300.0);
  std::uniform_real_distribution<double> offset(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    ThermalParams p = ec4pole_params();
    for (double& learned : p.learned) learned = offset(rng);
    const double f = tension(rng);
    const Derivatives d = derivatives(steady_state(f, p), f, p);
    CHECK(std::abs(d.dcore) < 1e-9);
    CHECK(std::abs(d.dhousing) < 1e-9);
  }
}

TEST_CASE("P=0 reduces exactly to the datasheet equations") {
  const MotorSpec spec = MotorSpec::ec4pole_90w();
  const ThermalParams p = params_from_spec(spec, 30.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> temp(20.0, 120.0);
  std::uniform_real_distribution<double> tension(0.0, 300.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double c1 = temp(rng), c2 = temp(rng), f = tension(rng);
    const Derivatives got = derivatives({c1, c2}, f, p);
    const Derivatives want = datasheet_rhs(
        c1, c2, f, spec.heat_capacity_core, spec.heat_capacity_housing,
        spec.resistance_core_housing, spec.resistance_housing_ambient,
        spec.heat_coefficient, 30.0);
    CHECK(got.dcore == doctest::Approx(want.dcore).epsilon(1e-12));
    CHECK(got.dhousing == doctest::Approx(want.dhousing).epsilon(1e-12));
  }
}

TEST_CASE("effective coefficients stay positive for any finite P") {
  ThermalParams p = ec4pole_params();
  for (double extreme : {-700.0, -50.0, 0.0, 50.0, 700.0}) {
    for (int i = 0; i < 4; ++i) {
      p.learned[i] = extreme;
      CHECK(p.base[i] * std::exp(p.learned[i]) > 0.0);
    }
  }
}

TEST_CASE("heating from rest is strictly increasing in f^2") {
  const ThermalParams p = ec4pole_params();
  double previous = -1.0;
  for (double f : {0.0, 50.0, 100.0, 200.0, 300.0}) {
    const Derivatives d = derivatives({30.0, 30.0}, f, p);
    CHECK(d.dcore > previous);
    CHECK(d.dhousing == 0.0);
    previous = d.dcore;
  }
}

TEST_CASE("rollout is associative over concatenation, bit-identical") {
  const ThermalParams p = ec4pole_params();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> tension(10.0, 300.0);
  std::vector<double> a(37), b(23);
  for (double& f : a) f = tension(rng);
  for (double& f : b) f = tension(rng);
  std::vector<double> joined = a;
  joined.insert(joined.end(), b.begin(), b.end());

  const auto whole = rollout({45.0, 38.0}, joined, p, 0.02);
  const auto head = rollout({45.0, 38.0}, a, p, 0.02);
  const auto tail = rollout(head.back(), b, p, 0.02);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(whole[i].core == head[i].core);
    CHECK(whole[i].housing == head[i].housing);
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(whole[a.size() + i].core == tail[i].core);
    CHECK(whole[a.size() + i].housing == tail[i].housing);
  }
}
