#include "thermo/actuator_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thermo {

Plant::Plant(const PlantConfig& cfg, const ThermalState& initial)
    : params_(params_from_spec(cfg.spec, cfg.ambient)),
      state_(initial),
      fault_(cfg.fault),
      dt_(cfg.dt) {
  if (!(cfg.dt > 0.0)) {
    throw std::invalid_argument("plant: dt must be positive");
  }
  params_.learned = cfg.p_sim;
}

Plant::Observation Plant::observe(double tension_cmd) const {
  Observation obs{state_.housing, tension_cmd};
  if (fault_.kind == FaultMode::Kind::StuckSensor) {
    obs.housing = fault_.value;
  }
  return obs;
}

Plant::Observation Plant::step(double tension_cmd) {
  const double applied = fault_.kind == FaultMode::Kind::StuckTension
                             ? fault_.value
                             : tension_cmd;
  state_ = thermo::step(state_, applied, params_, dt_);
  return observe(tension_cmd);
}

double random_tension_walk(std::mt19937_64& rng, double previous, double lo,
                           double hi) {
  std::uniform_real_distribution<double> dist(-50.0, 50.0);
  return std::clamp(previous + dist(rng), lo, hi);
}

std::array<double, 5> perturbed_params(std::mt19937_64& rng,
                                       double target_rmse) {
  if (target_rmse < 0.0) {
    throw std::invalid_argument("perturbed_params: negative target");
  }
  std::array<double, 5> direction{};
  if (target_rmse == 0.0) {
    return direction;
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& x : direction) {
      x = gauss(rng);
      norm += x * x;
    }
    norm = std::sqrt(norm);
  } while (norm < 1e-12);
  // RMSE over 5 entries of target_rmse means an L2 norm of sqrt(5)*target.
  const double scale = target_rmse * std::sqrt(5.0) / norm;
  for (double& x : direction) {
    x *= scale;
  }
  return direction;
}

double elastic_tension(const ElasticMuscle& muscle, double command_mm) {
  return muscle.stiffness * std::max(0.0, -command_mm);
}

}  // namespace thermo
