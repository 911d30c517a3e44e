#pragma once

#include <vector>

#include "thermo/thermal_model.hpp"

namespace thermo {

struct ControllerConfig {
  double dt = 1.0;            ///< plan step [s]
  int horizon = 30;           ///< plan length N_control
  double core_max = 80.0;     ///< temperature ceiling c1_max [degC]
  double tension_weight = 0.001;  ///< W_control, magnitude penalty weight
  double step_size = 30.0;    ///< beta [N]
  double tension_min = 10.0;  ///< [N]
  double tension_max = 300.0; ///< [N]
  int iters_per_tick = 50;
  double improvement_tol = 1e-6;  ///< early-stop threshold on loss decrease
};

/// Maximum-tension sequence over the horizon; the head entry is the active
/// ceiling handed to the limiter.
struct TensionPlan {
  std::vector<double> limits;  ///< [N], each within [tension_min, tension_max]
  double created_at = 0.0;
};

/// Tracking loss of the plan: both temperatures are integrated over the
/// horizon from the current state, and the mean squared gap between the
/// predicted core temperature and core_max is charged, plus tension_weight
/// times the mean squared tension.
double control_loss(const TensionPlan& plan, const ThermalState& current,
                    const ThermalParams& params, const ControllerConfig& cfg);

/// dL/df for every plan entry, by a reverse sweep of the rollout. The last
/// entry drives no predicted temperature and carries only the magnitude
/// penalty term.
std::vector<double> plan_gradient(const TensionPlan& plan,
                                  const ThermalState& current,
                                  const ThermalParams& params,
                                  const ControllerConfig& cfg);

/// One control period: warm-starts from the previous plan shifted left one
/// step with the tail duplicated (all tension_max on the first call), then
/// runs projected gradient steps, clamping after each step and stopping as
/// soon as a step fails to improve the loss by improvement_tol. Rejected
/// steps are not kept, so the returned plan never has a higher loss than
/// its warm start.
TensionPlan controller_tick(const TensionPlan* previous,
                            const ThermalState& current,
                            const ThermalParams& params,
                            const ControllerConfig& cfg);

}  // namespace thermo
