#include "thermo/learner.hpp"

#include <cmath>
#include <stdexcept>

namespace thermo {

namespace {

void check_window(const SampleWindow& window, double dt_data) {
  if (window.core_est.size() < 2 ||
      window.core_est.size() != window.housing.size() ||
      window.core_est.size() != window.tension.size()) {
    throw std::invalid_argument("learner: malformed sample window");
  }
  if (!(dt_data > 0.0)) {
    throw std::invalid_argument("learner: dt_data must be positive");
  }
}

bool window_finite(const SampleWindow& window) {
  auto all_finite = [](const std::vector<double>& v) {
    for (double x : v) {
      if (!std::isfinite(x)) return false;
    }
    return true;
  };
  return all_finite(window.core_est) && all_finite(window.housing) &&
         all_finite(window.tension);
}

}  // namespace

double window_loss(const SampleWindow& window, const ThermalParams& params,
                   double dt_data) {
  check_window(window, dt_data);
  const std::size_t n = window.housing.size();
  ThermalState state{window.core_est[0], window.housing[0]};
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    state = step(state, window.tension[k], params, dt_data);
    const double residual = state.housing - window.housing[k + 1];
    sum += residual * residual;
  }
  return sum;
}

std::array<double, 5> window_gradient(const SampleWindow& window,
                                      const ThermalParams& params,
                                      double dt_data) {
  check_window(window, dt_data);
  const std::size_t n = window.housing.size();
  const auto& w = params.base;
  const auto& p = params.learned;
  const double inv_w2 = 1.0 / (w[1] * std::exp(p[1]));
  const double inv_w3 = 1.0 / (w[2] * std::exp(p[2]));
  const double inv_w4 = 1.0 / (w[3] * std::exp(p[3]));
  const double heat_coeff = w[0] * std::exp(p[0]);
  const double ambient = w[4] * (1.0 + p[4]);

  // Forward pass, keeping the whole trajectory for the reverse sweep.
  std::vector<double> core(n), housing(n);
  core[0] = window.core_est[0];
  housing[0] = window.housing[0];
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const ThermalState next = step({core[k], housing[k]}, window.tension[k],
                                   params, dt_data);
    core[k + 1] = next.core;
    housing[k + 1] = next.housing;
  }

  // Reverse sweep of the recurrence x_{k+1} = x_k + h(x_k, f_k) dt.
  const double loss_scale = 2.0;
  std::array<double, 5> grad{};
  double adj_core = 0.0;
  double adj_housing = loss_scale * (housing[n - 1] - window.housing[n - 1]);
  for (std::size_t k = n - 1; k-- > 0;) {
    const double f = window.tension[k];
    const double gap = core[k] - housing[k];
    const double heat = heat_coeff * f * f;

    grad[0] += adj_core * dt_data * heat;
    grad[1] += adj_core * dt_data * gap * inv_w2;
    grad[2] += adj_housing * dt_data * (-gap * inv_w3);
    grad[3] += adj_housing * dt_data * (housing[k] - ambient) * inv_w4;
    grad[4] += adj_housing * dt_data * w[4] * inv_w4;

    const double next_core =
        adj_core * (1.0 - dt_data * inv_w2) + adj_housing * dt_data * inv_w3;
    const double next_housing =
        adj_core * dt_data * inv_w2 +
        adj_housing * (1.0 - dt_data * (inv_w3 + inv_w4));
    adj_core = next_core;
    adj_housing = next_housing;
    if (k >= 1) {
      adj_housing += loss_scale * (housing[k] - window.housing[k]);
    }
  }
  return grad;
}

bool learner_push(BatchBuffer& buffer, SampleWindow window, int n_batch) {
  if (!window_finite(window)) {
    return false;
  }
  buffer.windows.push_back(std::move(window));
  return static_cast<int>(buffer.windows.size()) >= n_batch;
}

ThermalParams learner_update(BatchBuffer& buffer, const ThermalParams& params,
                             const LearnerConfig& cfg) {
  if (static_cast<int>(buffer.windows.size()) < cfg.n_batch) {
    throw std::logic_error("learner: update requested before buffer is full");
  }
  std::array<double, 5> avg{};
  for (const SampleWindow& window : buffer.windows) {
    const std::array<double, 5> g =
        window_gradient(window, params, cfg.dt_data);
    for (int i = 0; i < 5; ++i) avg[i] += g[i];
  }
  const double count = static_cast<double>(buffer.windows.size());
  for (double& g : avg) g /= count;

  double norm_sq = 0.0;
  for (double g : avg) norm_sq += g * g;
  const double norm = std::sqrt(norm_sq);
  if (norm > cfg.grad_clip) {
    const double scale = cfg.grad_clip / norm;
    for (double& g : avg) g *= scale;
  }

  ThermalParams updated = params;
  for (int i = 0; i < 5; ++i) {
    updated.learned[i] -= cfg.alpha * avg[i];
  }
  buffer.windows.pop_front();
  return updated;
}

}  // namespace thermo
