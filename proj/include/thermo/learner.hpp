#pragma once

#include <cstddef>
#include <deque>
#include <vector>

#include "thermo/thermal_model.hpp"

namespace thermo {

struct LearnerConfig {
  double dt_data = 1.0;   ///< sample spacing inside a window [s]
  int n_seq = 30;         ///< samples per window
  int window_stride = 2;  ///< samples between window starts (n_seq = disjoint)
  int n_batch = 10;       ///< windows per update
  double alpha = 0.02;    ///< learning rate
  double grad_clip = 5.0; ///< cap on the L2 norm of the averaged gradient
};

/// One training unit: n_seq consecutive samples of (estimated core,
/// measured housing, measured tension) at dt_data spacing.
struct SampleWindow {
  std::vector<double> core_est;  ///< c1 estimates [degC]
  std::vector<double> housing;   ///< c2 measurements [degC]
  std::vector<double> tension;   ///< f measurements [N]
  double start_time = 0.0;
};

/// FIFO of windows awaiting an update, capacity n_batch.
struct BatchBuffer {
  std::deque<SampleWindow> windows;
};

/// Rolls both model equations forward n_seq-1 steps from the window's first
/// sample and returns the summed squared housing-prediction error over the
/// n_seq-1 predicted steps. Only the window's first core sample is used as
/// the rollout seed; the housing sequence is the teacher.
double window_loss(const SampleWindow& window, const ThermalParams& params,
                   double dt_data);

/// dL/dP1..P5 of window_loss via a reverse sweep of the Euler recurrence
/// (closed-form adjoint, no numeric differentiation).
std::array<double, 5> window_gradient(const SampleWindow& window,
                                      const ThermalParams& params,
                                      double dt_data);

/// Appends a window; windows containing any non-finite sample are dropped
/// whole. Returns true when the buffer has reached n_batch and an update
/// should run.
bool learner_push(BatchBuffer& buffer, SampleWindow window, int n_batch);

/// One gradient step: averages window_gradient over the full buffer, clips
/// the average to grad_clip in L2 norm, applies P <- P - alpha * g, and
/// evicts the oldest window. Throws if the buffer is not full.
ThermalParams learner_update(BatchBuffer& buffer, const ThermalParams& params,
                             const LearnerConfig& cfg);

}  // namespace thermo
