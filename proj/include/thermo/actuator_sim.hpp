#pragma once

#include <array>
#include <random>

#include "thermo/thermal_model.hpp"

namespace thermo {

/// Fault injected between the true plant and its observers.
struct FaultMode {
  enum class Kind {
    None,
    StuckSensor,   ///< housing sensor reports a fixed value
    StuckTension,  ///< plant receives a fixed tension regardless of command
  };
  Kind kind = Kind::None;
  double value = 0.0;  ///< reported degC (StuckSensor) or applied N
                       ///< (StuckTension)

  static FaultMode none() { return {}; }
  static FaultMode stuck_sensor(double reported) {
    return {Kind::StuckSensor, reported};
  }
  static FaultMode stuck_tension(double applied) {
    return {Kind::StuckTension, applied};
  }
};

struct PlantConfig {
  MotorSpec spec;
  std::array<double, 5> p_sim{};  ///< true parameter offsets
  double ambient = 30.0;          ///< [degC]
  double dt = 0.02;               ///< integration step [s]
  FaultMode fault;
};

/// Ground-truth thermal plant. Only the housing temperature and the tension
/// are observable; faults mask the observations (or, for StuckTension,
/// force the true input) without otherwise touching the true state.
class Plant {
 public:
  struct Observation {
    double housing;  ///< reported c2 [degC]
    double tension;  ///< reported f [N]
  };

  Plant(const PlantConfig& cfg, const ThermalState& initial);

  /// Advances one dt under the commanded tension, returns the (possibly
  /// fault-masked) observation of the new state.
  Observation step(double tension_cmd);

  Observation observe(double tension_cmd) const;
  const ThermalState& truth() const { return state_; }
  const ThermalParams& params() const { return params_; }
  double dt() const { return dt_; }

 private:
  ThermalParams params_;
  ThermalState state_;
  FaultMode fault_;
  double dt_;
};

/// One step of the excitation tension walk: previous value plus a uniform
/// draw from [-50, 50], clamped to [lo, hi].
double random_tension_walk(std::mt19937_64& rng, double previous,
                           double lo = 10.0, double hi = 200.0);

/// Random offset vector with RMSE against zero equal to target_rmse
/// exactly: a direction drawn on the 5-sphere, rescaled.
std::array<double, 5> perturbed_params(std::mt19937_64& rng,
                                       double target_rmse);

/// Fixed-endpoint elastic muscle: pulling (negative command) generates
/// tension, slack commands generate none.
struct ElasticMuscle {
  double stiffness = 12.5;  ///< [N/mm]
};

double elastic_tension(const ElasticMuscle& muscle, double command_mm);

}  // namespace thermo
