#include "thermo/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thermo {

namespace {

void check_plan(const TensionPlan& plan, const ControllerConfig& cfg) {
  if (static_cast<int>(plan.limits.size()) != cfg.horizon) {
    throw std::invalid_argument("controller: plan length != horizon");
  }
}

}  // namespace

double control_loss(const TensionPlan& plan, const ThermalState& current,
                    const ThermalParams& params, const ControllerConfig& cfg) {
  check_plan(plan, cfg);
  const int n = cfg.horizon;
  ThermalState state = current;
  double tracking = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    state = step(state, plan.limits[k], params, cfg.dt);
    const double err = state.core - cfg.core_max;
    tracking += err * err;
  }
  tracking /= static_cast<double>(n - 1);
  double magnitude = 0.0;
  for (double f : plan.limits) {
    magnitude += f * f;
  }
  magnitude /= static_cast<double>(n);
  return tracking + cfg.tension_weight * magnitude;
}

std::vector<double> plan_gradient(const TensionPlan& plan,
                                  const ThermalState& current,
                                  const ThermalParams& params,
                                  const ControllerConfig& cfg) {
  check_plan(plan, cfg);
  const int n = cfg.horizon;
  const auto& w = params.base;
  const auto& p = params.learned;
  const double inv_w2 = 1.0 / (w[1] * std::exp(p[1]));
  const double inv_w3 = 1.0 / (w[2] * std::exp(p[2]));
  const double inv_w4 = 1.0 / (w[3] * std::exp(p[3]));
  const double heat_coeff = w[0] * std::exp(p[0]);

  // Forward rollout; index k holds the state after k steps, k=0 is current.
  std::vector<double> core(n), housing(n);
  core[0] = current.core;
  housing[0] = current.housing;
  for (int k = 0; k + 1 < n; ++k) {
    const ThermalState next =
        step({core[k], housing[k]}, plan.limits[k], params, cfg.dt);
    core[k + 1] = next.core;
    housing[k + 1] = next.housing;
  }

  const double loss_scale = 2.0 / static_cast<double>(n - 1);
  const double penalty_scale =
      2.0 * cfg.tension_weight / static_cast<double>(n);
  std::vector<double> grad(n);
  for (int k = 0; k < n; ++k) {
    grad[k] = penalty_scale * plan.limits[k];
  }

  double adj_core = loss_scale * (core[n - 1] - cfg.core_max);
  double adj_housing = 0.0;
  for (int k = n - 2; k >= 0; --k) {
    // f_k enters only through the heating term of the core equation.
    grad[k] += adj_core * cfg.dt * 2.0 * heat_coeff * plan.limits[k];

    const double next_core =
        adj_core * (1.0 - cfg.dt * inv_w2) + adj_housing * cfg.dt * inv_w3;
    const double next_housing =
        adj_core * cfg.dt * inv_w2 +
        adj_housing * (1.0 - cfg.dt * (inv_w3 + inv_w4));
    adj_core = next_core;
    adj_housing = next_housing;
    if (k >= 1) {
      adj_core += loss_scale * (core[k] - cfg.core_max);
    }
  }
  return grad;
}

TensionPlan controller_tick(const TensionPlan* previous,
                            const ThermalState& current,
                            const ThermalParams& params,
                            const ControllerConfig& cfg) {
  TensionPlan plan;
  plan.limits.resize(cfg.horizon);
  if (previous != nullptr) {
    check_plan(*previous, cfg);
    for (int k = 0; k + 1 < cfg.horizon; ++k) {
      plan.limits[k] = previous->limits[k + 1];
    }
    plan.limits[cfg.horizon - 1] = previous->limits[cfg.horizon - 1];
  } else {
    std::fill(plan.limits.begin(), plan.limits.end(), cfg.tension_max);
  }
  plan.created_at = previous != nullptr ? previous->created_at + cfg.dt : 0.0;

  double loss = control_loss(plan, current, params, cfg);
  for (int iter = 0; iter < cfg.iters_per_tick; ++iter) {
    const std::vector<double> grad = plan_gradient(plan, current, params, cfg);
    TensionPlan candidate = plan;
    for (int k = 0; k < cfg.horizon; ++k) {
      candidate.limits[k] =
          std::clamp(plan.limits[k] - cfg.step_size * grad[k],
                     cfg.tension_min, cfg.tension_max);
    }
    const double candidate_loss = control_loss(candidate, current, params, cfg);
    if (candidate_loss >= loss - cfg.improvement_tol) {
      break;
    }
    plan = std::move(candidate);
    loss = candidate_loss;
  }
  return plan;
}

}  // namespace thermo
