#include "thermo/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace thermo {

EstimatorState estimator_init(double first_housing,
                              const EstimatorConfig& cfg) {
  if (!std::isfinite(first_housing)) {
    throw std::invalid_argument("estimator: first housing reading not finite");
  }
  const double c1 =
      cfg.init_policy == EstimatorConfig::InitPolicy::FirstHousingReading
          ? first_housing
          : cfg.fixed_ambient;
  return {c1, 0.0};
}

namespace {

double core_rate(double core, double housing, double tension,
                 const ThermalParams& params) {
  const auto& w = params.base;
  const auto& p = params.learned;
  return w[0] * std::exp(p[0]) * tension * tension -
         (core - housing) / (w[1] * std::exp(p[1]));
}

}  // namespace

EstimatorState estimator_tick(const EstimatorState& state,
                              double housing_meas, double tension_meas,
                              const ThermalParams& params,
                              const EstimatorConfig& cfg) {
  if (!std::isfinite(housing_meas) || !std::isfinite(tension_meas)) {
    throw std::invalid_argument("estimator: non-finite measurement");
  }
  EstimatorState next = state;
  next.core_estimate +=
      core_rate(state.core_estimate, housing_meas, tension_meas, params) *
      cfg.dt;
  next.last_update = state.last_update + cfg.dt;
  return next;
}

EstimatorState estimator_advance(const EstimatorState& state, double now,
                                 double housing_meas, double tension_meas,
                                 const ThermalParams& params,
                                 const EstimatorConfig& cfg) {
  const double gap = now - state.last_update;
  if (gap <= 0.0) {
    return state;
  }
  const int substeps = static_cast<int>(std::ceil(gap / cfg.dt - 1e-9));
  const double dt = gap / substeps;
  EstimatorState next = state;
  for (int i = 0; i < substeps; ++i) {
    if (!std::isfinite(housing_meas) || !std::isfinite(tension_meas)) {
      throw std::invalid_argument("estimator: non-finite measurement");
    }
    next.core_estimate +=
        core_rate(next.core_estimate, housing_meas, tension_meas, params) * dt;
  }
  next.last_update = now;
  return next;
}

}  // namespace thermo
