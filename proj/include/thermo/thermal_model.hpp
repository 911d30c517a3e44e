#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace thermo {

/// Drivetrain constants needed to convert wire tension to winding heat.
struct RawMotorConstants {
  double winding_resistance;  ///< R_e [Ohm]
  double torque_constant;     ///< K_t [N*m/A]
  double efficiency_motor;    ///< dimensionless, (0, 1]
  double efficiency_gear;     ///< dimensionless, (0, 1]
  double gear_ratio;          ///< dimensionless
  double pulley_radius;       ///< [m]
};

/// Datasheet constants of one motor.
///
/// Units are fixed project-wide: temperatures in degC, tension in N, time in
/// s, heat capacity in J/K, thermal resistance in K/W.
struct MotorSpec {
  double heat_capacity_core;          ///< C1 [J/K]
  double heat_capacity_housing;       ///< C2 [J/K]
  double resistance_core_housing;     ///< R1 [K/W]
  double resistance_housing_ambient;  ///< R2 [K/W]
  double heat_coefficient;            ///< K [J/(N^2*s)], tension^2 -> heat
  std::optional<RawMotorConstants> raw;

  /// Throws std::invalid_argument if any constant is non-positive or the raw
  /// constants disagree with heat_coefficient beyond relative 1e-9.
  void validate() const;

  /// Maxon EC-4pole 22 90W with 29:1 gear (sensor-driver integrated module).
  static MotorSpec ec4pole_90w();
  /// Maxon EC 16 60W with 128:1 gear (miniature bone-muscle module).
  static MotorSpec ec16_60w();
};

/// K = R_e * (D_pulley / (E_gear * D_gear * E_motor * K_t))^2
double k_from_raw(const RawMotorConstants& raw);

/// C = T / R, for datasheets that list thermal time constants instead of
/// heat capacities.
double capacity_from_time_constant(double time_constant, double resistance);

/// Core and housing temperature of one motor at one instant [degC].
struct ThermalState {
  double core = 0.0;
  double housing = 0.0;
};

/// Full state of the parameterized two-resistor model.
///
/// base[0..4] hold W1..W5 derived from the datasheet (W1=K/C1, W2=R1*C1,
/// W3=R1*C2, W4=R2*C2, W5=ambient); learned[0..4] hold the online-updated
/// offsets P1..P5. Effective coefficients are Wi*exp(Pi) for i=1..4 and
/// W5*(1+P5) for the ambient, so the first four stay positive for any
/// finite Pi. With all Pi = 0 the model is exactly the datasheet model.
struct ThermalParams {
  std::array<double, 5> base{};
  std::array<double, 5> learned{};
};

ThermalParams params_from_spec(const MotorSpec& spec, double ambient);

struct Derivatives {
  double dcore;     ///< dc1/dt [degC/s]
  double dhousing;  ///< dc2/dt [degC/s]
};

/// Right-hand side of the model:
///   dc1/dt = W1*exp(P1)*f^2 - (c1-c2)/(W2*exp(P2))
///   dc2/dt = (c1-c2)/(W3*exp(P3)) - (c2 - W5*(1+P5))/(W4*exp(P4))
/// dcore is evaluated fully before dhousing; reorderings are not allowed so
/// traces reproduce bit-identically.
Derivatives derivatives(const ThermalState& state, double tension,
                        const ThermalParams& params);

/// One forward-Euler step of both temperatures.
ThermalState step(const ThermalState& state, double tension,
                  const ThermalParams& params, double dt);

/// Chain of Euler steps; result[j] is the state after j+1 steps, with
/// tensions[j] applied on step j. Throws on an empty tension sequence.
std::vector<ThermalState> rollout(const ThermalState& initial,
                                  std::span<const double> tensions,
                                  const ThermalParams& params, double dt);

/// Analytic fixed point of the dynamics under constant tension.
ThermalState steady_state(double tension, const ThermalParams& params);

}  // namespace thermo
