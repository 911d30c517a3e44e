#pragma once

#include "thermo/thermal_model.hpp"

namespace thermo {

struct EstimatorConfig {
  enum class InitPolicy { FirstHousingReading, FixedAmbient };

  double dt = 0.02;  ///< update interval [s]
  InitPolicy init_policy = InitPolicy::FirstHousingReading;
  double fixed_ambient = 30.0;  ///< used only under FixedAmbient [degC]
};

struct EstimatorState {
  double core_estimate = 0.0;  ///< c1 estimate [degC]
  double last_update = 0.0;    ///< timestamp of the last tick [s]
};

EstimatorState estimator_init(double first_housing,
                              const EstimatorConfig& cfg);

/// Advances the core estimate one Euler step of the core equation only; the
/// housing temperature is supplied by the sensor, never integrated. Throws
/// on a non-finite measurement, leaving the state untouched.
EstimatorState estimator_tick(const EstimatorState& state,
                              double housing_meas, double tension_meas,
                              const ThermalParams& params,
                              const EstimatorConfig& cfg);

/// Catch-up helper for telemetry with gaps: advances to `now` in
/// ceil(gap/dt) equal sub-steps holding the given measurements.
EstimatorState estimator_advance(const EstimatorState& state, double now,
                                 double housing_meas, double tension_meas,
                                 const ThermalParams& params,
                                 const EstimatorConfig& cfg);

}  // namespace thermo
