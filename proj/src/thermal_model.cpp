#include "thermo/thermal_model.hpp"

#include <cmath>
#include <stdexcept>

namespace thermo {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0)) {
    throw std::invalid_argument(std::string("motor spec: ") + name +
                                " must be positive");
  }
}

}  // namespace

void MotorSpec::validate() const {
  require_positive(heat_capacity_core, "C1");
  require_positive(heat_capacity_housing, "C2");
  require_positive(resistance_core_housing, "R1");
  require_positive(resistance_housing_ambient, "R2");
  require_positive(heat_coefficient, "K");
  if (raw) {
    const double k = k_from_raw(*raw);
    if (std::abs(k - heat_coefficient) > 1e-9 * heat_coefficient) {
      throw std::invalid_argument(
          "motor spec: heat_coefficient disagrees with raw drivetrain "
          "constants");
    }
  }
}

MotorSpec MotorSpec::ec4pole_90w() {
  return MotorSpec{2.10, 29.0, 1.20, 10.3, 2.97e-4, std::nullopt};
}

MotorSpec MotorSpec::ec16_60w() {
  return MotorSpec{1.19, 12.2, 4.30, 39.5, 4.50e-5, std::nullopt};
}

double k_from_raw(const RawMotorConstants& raw) {
  require_positive(raw.winding_resistance, "R_e");
  require_positive(raw.torque_constant, "K_t");
  require_positive(raw.efficiency_motor, "E_motor");
  require_positive(raw.efficiency_gear, "E_gear");
  require_positive(raw.gear_ratio, "D_gear");
  require_positive(raw.pulley_radius, "D_pulley");
  const double ratio = raw.pulley_radius /
                       (raw.efficiency_gear * raw.gear_ratio *
                        raw.efficiency_motor * raw.torque_constant);
  return raw.winding_resistance * ratio * ratio;
}

double capacity_from_time_constant(double time_constant, double resistance) {
  require_positive(time_constant, "T");
  require_positive(resistance, "R");
  return time_constant / resistance;
}

ThermalParams params_from_spec(const MotorSpec& spec, double ambient) {
  spec.validate();
  if (!std::isfinite(ambient)) {
    throw std::invalid_argument("motor spec: ambient must be finite");
  }
  ThermalParams params;
  params.base[0] = spec.heat_coefficient / spec.heat_capacity_core;
  params.base[1] = spec.resistance_core_housing * spec.heat_capacity_core;
  params.base[2] = spec.resistance_core_housing * spec.heat_capacity_housing;
  params.base[3] = spec.resistance_housing_ambient * spec.heat_capacity_housing;
  params.base[4] = ambient;
  params.learned.fill(0.0);
  return params;
}

Derivatives derivatives(const ThermalState& state, double tension,
                        const ThermalParams& params) {
  const auto& w = params.base;
  const auto& p = params.learned;
  const double dcore = w[0] * std::exp(p[0]) * tension * tension -
                       (state.core - state.housing) / (w[1] * std::exp(p[1]));
  const double dhousing =
      (state.core - state.housing) / (w[2] * std::exp(p[2])) -
      (state.housing - w[4] * (1.0 + p[4])) / (w[3] * std::exp(p[3]));
  return {dcore, dhousing};
}

ThermalState step(const ThermalState& state, double tension,
                  const ThermalParams& params, double dt) {
  const Derivatives d = derivatives(state, tension, params);
  return {state.core + d.dcore * dt, state.housing + d.dhousing * dt};
}

std::vector<ThermalState> rollout(const ThermalState& initial,
                                  std::span<const double> tensions,
                                  const ThermalParams& params, double dt) {
  if (tensions.empty()) {
    throw std::invalid_argument("rollout: tension sequence is empty");
  }
  std::vector<ThermalState> states;
  states.reserve(tensions.size());
  ThermalState current = initial;
  for (double f : tensions) {
    current = step(current, f, params, dt);
    states.push_back(current);
  }
  return states;
}

ThermalState steady_state(double tension, const ThermalParams& params) {
  const auto& w = params.base;
  const auto& p = params.learned;
  // h1 = 0 gives the core-housing gap; h2 = 0 then fixes the housing level.
  const double gap =
      w[0] * w[1] * std::exp(p[0] + p[1]) * tension * tension;
  const double housing =
      w[4] * (1.0 + p[4]) +
      (w[3] * std::exp(p[3])) / (w[2] * std::exp(p[2])) * gap;
  return {housing + gap, housing};
}

}  // namespace thermo
